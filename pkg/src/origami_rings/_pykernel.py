"""Pure-Python closure kernel.  Arbitrary-precision ints, no overflow.

Points are integer numerator pairs ``(x, y)`` over a common denominator
held by the caller.  A fold through ``(x, y)`` along the primitive
direction ``(dr, dc)`` is identified by its key ``dr*y - dc*x``.
"""


def line_keys(xs, ys, dr, dc):
    """Sorted distinct keys of the folds along ``(dr, dc)`` through the points."""
    return sorted({dr * y - dc * x for x, y in zip(xs, ys)})


def new_intersections(xs, ys, scale, tasks):
    """Intersection points not already present, sorted lexicographically.

    ``tasks`` holds ``(alphas, betas, ur, uc, vr, vc, mult)`` tuples; each
    ``(alpha, beta)`` pair yields ``mult*(alpha*v - beta*u)``.  Existing
    points are compared after multiplying by ``scale``.
    """
    existing = {(scale * x, scale * y) for x, y in zip(xs, ys)}
    found = set()
    for alphas, betas, ur, uc, vr, vc, mult in tasks:
        bu = [(b * ur, b * uc) for b in betas]
        for a in alphas:
            ax, ay = a * vr, a * vc
            for bx, by in bu:
                z = (mult * (ax - bx), mult * (ay - by))
                if z not in existing:
                    found.add(z)
    out = sorted(found)
    return [z[0] for z in out], [z[1] for z in out]


def as_native(values):
    return values


def merge_unique(parts):
    """Union of ``(xs, ys)`` results, sorted lexicographically."""
    out = sorted({z for xs, ys in parts for z in zip(xs, ys)})
    return [z[0] for z in out], [z[1] for z in out]
