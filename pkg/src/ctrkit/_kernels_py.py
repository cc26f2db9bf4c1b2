"""Pure-Python pair scan, used when the compiled kernel is unavailable."""

GEOM_TOL = 1e-9


def pair_scan(od, wall, curv, stiff, min_clearance, target_curvature, start, stop):
    """Scan outer tubes ``start..stop-1`` against every inner candidate.

    Returns parallel lists ``(outer_idx, inner_idx, kappa, score)`` for the
    pairs whose diametral clearance is at least ``min_clearance``.
    """
    od = list(map(float, od))
    wall = list(map(float, wall))
    curv = list(map(float, curv))
    stiff = list(map(float, stiff))
    n = len(od)
    need = min_clearance - GEOM_TOL
    oi, ii, kap, sc = [], [], [], []
    for i in range(start, stop):
        bore = od[i] - 2.0 * wall[i]
        if bore < 0.0:
            bore = 0.0
        so, ko = stiff[i], curv[i]
        for j in range(n):
            if bore - od[j] < need:
                continue
            si, ki = stiff[j], curv[j]
            k = (0.0 + so * ko + si * ki) / (0.0 + so + si)
            lo, hi = (ko, ki) if ko <= ki else (ki, ko)
            if k < lo:
                k = lo
            elif k > hi:
                k = hi
            oi.append(i)
            ii.append(j)
            kap.append(k)
            sc.append(abs(k - target_curvature))
    return oi, ii, kap, sc
