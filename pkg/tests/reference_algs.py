"""Line-by-line transcriptions of the two baseline methods, used only to
cross-check that the unified engine reduces to them exactly.

Each keeps its own model coefficients inline (no shared estimating-function
code) and returns the iterate sequence.  Runs halt early if the accumulated
weight leaves float64 range, reporting how many iterates were produced.
"""

import math

import numpy as np

from ufgm.oracle import eval_composite, prox


def universal_method(problem, x0, L0, eps, iterations):
    """Plain universal method: momentum a^2/(A+a) = 1/Lhat, model adds a*l_F."""
    x = np.array(x0, dtype=float)
    A = 0.0
    A_comp = 0.0
    L = L0
    quad = 1.0
    lin = -x.copy()
    g_weight = 0.0
    Fx = eval_composite(problem, x)
    iterates = [x.copy()]
    for _ in range(iterations):
        Lhat = L / 2.0
        v = prox(problem, -lin / quad, g_weight / quad)
        while True:
            r = 1.0 / Lhat
            a = 0.5 * (r + math.sqrt(r * r + 4.0 * r * A))
            if not (a > 0 and math.isfinite(a) and math.isfinite(A + a)):
                return iterates, "range"
            theta = a / (A + a)
            y = (1.0 - theta) * x + theta * v
            fy = float(problem.smooth_value(y))
            gy = problem.smooth_gradient(y)
            step = 1.0 / (theta * Lhat)
            z = prox(problem, v - step * gy, step)
            xt = (1.0 - theta) * x + theta * z
            Ft = eval_composite(problem, xt)
            d = xt - y
            l_F = fy + float(np.dot(gy, d)) + float(problem.nonsmooth_value(xt))
            if Ft <= l_F + 0.5 * Lhat * float(np.dot(d, d)) + 0.5 * theta * eps:
                break
            Lhat *= 2.0
        if Ft <= Fx:
            x = xt
            Fx = Ft
        L = Lhat
        y_c = a - A_comp
        t_c = A + y_c
        A_comp = (t_c - A) - y_c
        A = t_c
        lin = lin + a * gy
        g_weight = g_weight + a
        iterates.append(x.copy())
    return iterates, ""


def strong_method(problem, x0, L0, mu, eps, iterations):
    """Strongly convex variant: momentum (1 + mu A)/Lhat, model adds the
    mu/2 ||x - y||^2 quadratic."""
    x = np.array(x0, dtype=float)
    A = 0.0
    A_comp = 0.0
    L = L0
    lin = -x.copy()
    g_weight = 0.0
    strong = 0.0
    Fx = eval_composite(problem, x)
    iterates = [x.copy()]
    for _ in range(iterations):
        Lhat = L / 2.0
        quad = 1.0 + strong
        v = prox(problem, -lin / quad, g_weight / quad)
        while True:
            r = (1.0 + strong) / Lhat
            if not (math.isfinite(r) and r < 1e300 and A < 1e300):
                return iterates, "range"
            a = 0.5 * (r + math.sqrt(r * r + 4.0 * r * A))
            if not (a > 0 and math.isfinite(a)):
                return iterates, "range"
            theta = a / (A + a)
            y = (1.0 - theta) * x + theta * v
            fy = float(problem.smooth_value(y))
            gy = problem.smooth_gradient(y)
            step = 1.0 / (theta * Lhat)
            z = prox(problem, v - step * gy, step)
            xt = (1.0 - theta) * x + theta * z
            Ft = eval_composite(problem, xt)
            d = xt - y
            l_F = fy + float(np.dot(gy, d)) + float(problem.nonsmooth_value(xt))
            if Ft <= l_F + 0.5 * Lhat * float(np.dot(d, d)) + 0.5 * theta * eps:
                break
            Lhat *= 2.0
        if Ft <= Fx:
            x = xt
            Fx = Ft
        L = Lhat
        y_c = a - A_comp
        t_c = A + y_c
        A_comp = (t_c - A) - y_c
        A = t_c
        lin = lin + a * (gy - mu * y)
        g_weight = g_weight + a
        strong = strong + a * mu
        iterates.append(x.copy())
    return iterates, ""
