# Pure-Python elimination kernels.  Same interface as the compiled
# ``_kernels`` extension; used when the extension is missing or disabled.

from math import gcd


def _primitive(row):
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        return {k: x // g for k, x in row.items()}
    return row


def rank_int(rows, ncols):
    """Rank over Q of a list of sparse integer rows ({col: int}).

    Rows are inserted one at a time into an echelon basis using
    fraction-free updates ``v <- a*v - b*p`` followed by removal of the
    row content, so entries stay as small as the data allows.
    """
    pivots = {}
    rank = 0
    for row in rows:
        v = {k: x for k, x in row.items() if x}
        while v:
            c = min(v)
            p = pivots.get(c)
            if p is None:
                pivots[c] = _primitive(v)
                rank += 1
                break
            a = p[c]
            b = v[c]
            g = gcd(a, b)
            ma, mb = a // g, b // g
            new = {k: ma * x for k, x in v.items()}
            for k, x in p.items():
                y = new.get(k, 0) - mb * x
                if y:
                    new[k] = y
                else:
                    new.pop(k, None)
            v = _primitive(new)
    return rank


def rank_mod_p(rows, ncols, p):
    """Rank over GF(p) of sparse rows whose entries are already reduced mod p."""
    pivots = {}
    rank = 0
    for row in rows:
        v = {k: x % p for k, x in row.items() if x % p}
        while v:
            c = min(v)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(v[c], -1, p)
                pivots[c] = {k: (x * inv) % p for k, x in v.items()}
                rank += 1
                break
            f = v[c]
            for k, x in piv.items():
                y = (v.get(k, 0) - f * x) % p
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
    return rank
