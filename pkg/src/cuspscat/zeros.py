"""Zero location for holomorphic functions on rectangles.

Winding numbers come from adaptively sampled boundary phase increments
(each increment kept below 1 radian); rectangles are subdivided until
they isolate single zeros, which Newton iteration then refines.  A
mismatch between the rectangle count and the refined list raises
WindingError carrying the partial results.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError, WindingError

__all__ = ["winding_number", "refine_newton", "find_zeros"]

_MAX_ARG_DEPTH = 42


def _arg_change(f, z1, z2, f1, f2, depth=_MAX_ARG_DEPTH):
    if abs(f1) == 0 or abs(f2) == 0:
        raise WindingError("zero on the search contour at %r" % (z1 if abs(f1) == 0 else z2,))
    d = np.angle(f2 / f1)
    if abs(d) <= 1.0:
        return d
    if depth <= 0:
        raise WindingError("boundary phase did not resolve near %r" % (z1,))
    zm = 0.5 * (z1 + z2)
    fm = f(zm)
    return _arg_change(f, z1, zm, f1, fm, depth - 1) + _arg_change(f, zm, z2, fm, f2, depth - 1)


def _rect_corners(rect):
    re0, re1, im0, im1 = (float(v) for v in rect)
    if not (re1 > re0 and im1 > im0):
        raise InputError("rectangle must have positive extent")
    return [complex(re0, im0), complex(re1, im0), complex(re1, im1), complex(re0, im1)]


def winding_number(f, rect, samples_per_side=16):
    """Winding number of f around the rectangle (re0, re1, im0, im1)."""
    corners = _rect_corners(rect)
    total = 0.0
    for c0, c1 in zip(corners, corners[1:] + corners[:1]):
        ts = np.linspace(0.0, 1.0, samples_per_side + 1)
        pts = c0 + ts * (c1 - c0)
        vals = [f(z) for z in pts]
        for k in range(samples_per_side):
            total += _arg_change(f, pts[k], pts[k + 1], vals[k], vals[k + 1])
    w = total / (2.0 * np.pi)
    wi = int(round(w))
    if abs(w - wi) > 0.05:
        raise WindingError("non-integer winding %.4f on %r" % (w, rect))
    return wi


def refine_newton(f, z0, fprime=None, tol=5e-14, max_iter=80):
    """Newton refinement of an isolated zero; returns (z, |f(z)|, iters).

    With no derivative supplied a central difference with step
    1e-6 (1 + |z|) is used.
    """
    z = complex(z0)
    for it in range(1, max_iter + 1):
        fz = f(z)
        if fprime is not None:
            dz = fprime(z)
        else:
            h = 1e-6 * (1.0 + abs(z))
            dz = (f(z + h) - f(z - h)) / (2.0 * h)
        if dz == 0:
            break
        step = fz / dz
        z = z - step
        if abs(step) <= tol * (1.0 + abs(z)):
            return z, abs(f(z)), it
    return z, abs(f(z)), max_iter


def _subdivide(rect, frac=0.5):
    re0, re1, im0, im1 = rect
    if (re1 - re0) >= (im1 - im0):
        cut = re0 + frac * (re1 - re0)
        return (re0, cut, im0, im1), (cut, re1, im0, im1)
    cut = im0 + frac * (im1 - im0)
    return (re0, re1, im0, cut), (re0, re1, cut, im1)


def find_zeros(f, rect, fprime=None, isolate_diam=0.35, residual_tol=None, max_zeros=256):
    """All zeros of f inside the rectangle, with multiplicity flags.

    Returns a list of dicts (z, residual, iters, multiplicity).  The
    summed multiplicity is checked against the rectangle winding; a
    mismatch raises WindingError with the partial list attached.
    """
    total = winding_number(f, rect)
    if total == 0:
        return []
    if total < 0:
        raise WindingError("negative winding %d: function is not holomorphic here" % total)
    found = []
    stack = [(rect, total)]
    while stack:
        box, w = stack.pop()
        if w == 0:
            continue
        diam = max(box[1] - box[0], box[3] - box[2])
        if w == 1 and diam <= isolate_diam:
            z0 = complex(0.5 * (box[0] + box[1]), 0.5 * (box[2] + box[3]))
            z, res, iters = refine_newton(f, z0, fprime)
            found.append({"z": z, "residual": res, "iters": iters, "multiplicity": 1})
            continue
        if diam <= 1e-8:
            # unresolvable cluster: report as one zero with multiplicity
            z0 = complex(0.5 * (box[0] + box[1]), 0.5 * (box[2] + box[3]))
            found.append({"z": z0, "residual": abs(f(z0)), "iters": 0, "multiplicity": w})
            continue
        placed = False
        for frac in (0.5, 0.43, 0.57, 0.34):
            r1, r2 = _subdivide(box, frac=frac)
            try:
                w1 = winding_number(f, r1)
            except WindingError:
                continue  # zero on the trial cut line; move the cut
            if not (0 <= w1 <= w):
                continue
            stack.append((r1, w1))
            stack.append((r2, w - w1))
            placed = True
            break
        if not placed:
            raise WindingError("could not split %r cleanly" % (box,), partial=found)
        if len(found) > max_zeros:
            raise WindingError("more than %d zeros in %r" % (max_zeros, rect), partial=found)
    # dedup (Newton may converge to the same zero from sibling boxes)
    unique = []
    for item in sorted(found, key=lambda d: (d["z"].real, d["z"].imag)):
        for u in unique:
            if abs(u["z"] - item["z"]) <= 1e-7 * (1.0 + abs(u["z"])):
                u["multiplicity"] += item["multiplicity"]
                break
        else:
            unique.append(item)
    count = sum(u["multiplicity"] for u in unique)
    if count != total:
        raise WindingError(
            "refined %d zeros but contour winding is %d" % (count, total), partial=unique)
    if residual_tol is not None:
        bad = [u for u in unique if u["residual"] > residual_tol]
        if bad:
            raise WindingError("zeros failed the residual tolerance", partial=unique)
    return unique
