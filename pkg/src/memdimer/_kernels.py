"""Compiled fixed-step RK4 cores for the three circuit variants.

One kernel per variant and per integration space (physical Kirchhoff
variables vs energy-density variables).  The kernels are deliberately
scalar-unrolled: a 200k-step run costs ~15 ms, which is what makes the
phase-map sweeps affordable.  All kernels are nogil so the sweep engine can
run them from a thread pool, and none of them uses fastmath, so results are
bit-reproducible regardless of parallelism.

Step-size policy: fixed dt.  The only adaptation is for the memory state:
if a step would overshoot past the [0,1] boundaries by more than ten clamp
widths, the whole step is redone as 2, 4, 8, then 16 substeps; after each
committed (sub)step the memory state is clamped into [eps, 1-eps].

Status codes returned by every kernel: 0 completed, 1 energy cutoff
exceeded, 2 non-finite state encountered.
"""

import math

from numba import njit

TWO_PI = 2.0 * math.pi

STATUS_OK = 0
STATUS_CUTOFF = 1
STATUS_NONFINITE = 2

_MAX_HALVINGS = 4
_OVERSHOOT = 10.0


@njit(cache=True, nogil=True)
def _rhs_static_phi(v1, v2, i1, i2, ic, gamma, C, L, Lc):
    dv1 = -gamma * v1 - i1 / C - ic / C
    dv2 = +gamma * v2 - i2 / C + ic / C
    di1 = v1 / L
    di2 = v2 / L
    dic = (v1 - v2) / Lc
    return dv1, dv2, di1, di2, dic


@njit(cache=True, nogil=True)
def sim_static_phi(phi0, gamma, C, L, Lc, dt, n_steps, record_every, cutoff,
                   times, states, energy):
    """Fixed-gamma dimer in physical variables.  gamma may be negative,
    which swaps the roles of the loss and gain circuits."""
    v1 = phi0[0]
    v2 = phi0[1]
    i1 = phi0[2]
    i2 = phi0[3]
    ic = phi0[4]

    e0 = 0.5 * (C * (v1 * v1 + v2 * v2) + L * (i1 * i1 + i2 * i2) + Lc * ic * ic)
    e_ref = e0 if e0 > 0.0 else 1.0

    times[0] = 0.0
    states[0, 0] = v1
    states[0, 1] = v2
    states[0, 2] = i1
    states[0, 3] = i2
    states[0, 4] = ic
    energy[0] = e0
    r = 1
    status = STATUS_OK

    for k in range(1, n_steps + 1):
        a1, b1, c1, d1, f1 = _rhs_static_phi(v1, v2, i1, i2, ic, gamma, C, L, Lc)
        h2 = 0.5 * dt
        a2, b2, c2, d2, f2 = _rhs_static_phi(
            v1 + h2 * a1, v2 + h2 * b1, i1 + h2 * c1, i2 + h2 * d1, ic + h2 * f1,
            gamma, C, L, Lc)
        a3, b3, c3, d3, f3 = _rhs_static_phi(
            v1 + h2 * a2, v2 + h2 * b2, i1 + h2 * c2, i2 + h2 * d2, ic + h2 * f2,
            gamma, C, L, Lc)
        a4, b4, c4, d4, f4 = _rhs_static_phi(
            v1 + dt * a3, v2 + dt * b3, i1 + dt * c3, i2 + dt * d3, ic + dt * f3,
            gamma, C, L, Lc)
        s = dt / 6.0
        v1 += s * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        v2 += s * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
        i1 += s * (c1 + 2.0 * c2 + 2.0 * c3 + c4)
        i2 += s * (d1 + 2.0 * d2 + 2.0 * d3 + d4)
        ic += s * (f1 + 2.0 * f2 + 2.0 * f3 + f4)

        e = 0.5 * (C * (v1 * v1 + v2 * v2) + L * (i1 * i1 + i2 * i2) + Lc * ic * ic)
        if not (math.isfinite(e) and math.isfinite(v1) and math.isfinite(ic)):
            status = STATUS_NONFINITE
            break
        if e > cutoff * e_ref:
            status = STATUS_CUTOFF
            times[r] = k * dt
            states[r, 0] = v1
            states[r, 1] = v2
            states[r, 2] = i1
            states[r, 3] = i2
            states[r, 4] = ic
            energy[r] = e
            r += 1
            break
        if k % record_every == 0:
            times[r] = k * dt
            states[r, 0] = v1
            states[r, 1] = v2
            states[r, 2] = i1
            states[r, 3] = i2
            states[r, 4] = ic
            energy[r] = e
            r += 1
    return r, status


@njit(cache=True, nogil=True)
def _sat(x):
    # device laws are defined on [0,1] only; RK4 stage values may poke past
    # the boundaries under extreme drive and must see saturated elements
    # (otherwise R(x) can cross zero and the window can change sign)
    if x < 0.0:
        return 0.0
    if x > 1.0:
        return 1.0
    return x


@njit(cache=True, nogil=True)
def _rhs_mem_phi(v1, v2, i1, i2, ic, x, C, L, Lc, r_on, r_off, eta, p, v0, omega0):
    xc = _sat(x)
    rx = xc * r_on + (1.0 - xc) * r_off
    g = 1.0 / (rx * C)
    dv1 = -g * v1 - i1 / C - ic / C
    dv2 = +g * v2 - i2 / C + ic / C
    di1 = v1 / L
    di2 = v2 / L
    dic = (v1 - v2) / Lc
    w = 1.0 - (2.0 * xc - 1.0) ** (2 * p)
    dx = eta * w * (r_on / rx) * (v1 / v0) * omega0 / TWO_PI
    return dv1, dv2, di1, di2, dic, dx


@njit(cache=True, nogil=True)
def sim_memristive_phi(phi0, x0, C, L, Lc, r_on, r_off, eta, p, v0, omega0,
                       dt, n_steps, record_every, eps, cutoff,
                       times, states, mem, energy, g_inst, g_avg):
    """Memristive dimer with instantaneously balanced gain, physical variables."""
    v1 = phi0[0]
    v2 = phi0[1]
    i1 = phi0[2]
    i2 = phi0[3]
    ic = phi0[4]
    x = x0
    acc = 0.0  # time integral of gamma(x)

    e0 = 0.5 * (C * (v1 * v1 + v2 * v2) + L * (i1 * i1 + i2 * i2) + Lc * ic * ic)
    e_ref = e0 if e0 > 0.0 else 1.0
    g0 = 1.0 / ((x * r_on + (1.0 - x) * r_off) * C)

    times[0] = 0.0
    states[0, 0] = v1
    states[0, 1] = v2
    states[0, 2] = i1
    states[0, 3] = i2
    states[0, 4] = ic
    mem[0] = x
    energy[0] = e0
    g_inst[0] = g0
    g_avg[0] = g0
    r = 1
    status = STATUS_OK

    for k in range(1, n_steps + 1):
        h = dt
        nsub = 1
        for level in range(_MAX_HALVINGS + 1):
            tv1 = v1
            tv2 = v2
            ti1 = i1
            ti2 = i2
            tic = ic
            tx = x
            tacc = acc
            ok = True
            for _ in range(nsub):
                gb = 1.0 / ((tx * r_on + (1.0 - tx) * r_off) * C)
                a1, b1, c1, d1, f1, x1 = _rhs_mem_phi(
                    tv1, tv2, ti1, ti2, tic, tx, C, L, Lc, r_on, r_off, eta, p, v0, omega0)
                h2 = 0.5 * h
                a2, b2, c2, d2, f2, x2 = _rhs_mem_phi(
                    tv1 + h2 * a1, tv2 + h2 * b1, ti1 + h2 * c1, ti2 + h2 * d1,
                    tic + h2 * f1, tx + h2 * x1, C, L, Lc, r_on, r_off, eta, p, v0, omega0)
                a3, b3, c3, d3, f3, x3 = _rhs_mem_phi(
                    tv1 + h2 * a2, tv2 + h2 * b2, ti1 + h2 * c2, ti2 + h2 * d2,
                    tic + h2 * f2, tx + h2 * x2, C, L, Lc, r_on, r_off, eta, p, v0, omega0)
                a4, b4, c4, d4, f4, x4 = _rhs_mem_phi(
                    tv1 + h * a3, tv2 + h * b3, ti1 + h * c3, ti2 + h * d3,
                    tic + h * f3, tx + h * x3, C, L, Lc, r_on, r_off, eta, p, v0, omega0)
                s = h / 6.0
                nx = tx + s * (x1 + 2.0 * x2 + 2.0 * x3 + x4)
                if (nx < -_OVERSHOOT * eps or nx > 1.0 + _OVERSHOOT * eps) and level < _MAX_HALVINGS:
                    ok = False
                    break
                if nx < eps:
                    nx = eps
                elif nx > 1.0 - eps:
                    nx = 1.0 - eps
                tv1 += s * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
                tv2 += s * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
                ti1 += s * (c1 + 2.0 * c2 + 2.0 * c3 + c4)
                ti2 += s * (d1 + 2.0 * d2 + 2.0 * d3 + d4)
                tic += s * (f1 + 2.0 * f2 + 2.0 * f3 + f4)
                tx = nx
                ga = 1.0 / ((tx * r_on + (1.0 - tx) * r_off) * C)
                tacc += 0.5 * (gb + ga) * h
            if ok:
                v1 = tv1
                v2 = tv2
                i1 = ti1
                i2 = ti2
                ic = tic
                x = tx
                acc = tacc
                break
            h *= 0.5
            nsub *= 2

        e = 0.5 * (C * (v1 * v1 + v2 * v2) + L * (i1 * i1 + i2 * i2) + Lc * ic * ic)
        if not (math.isfinite(e) and math.isfinite(v1) and math.isfinite(ic)):
            status = STATUS_NONFINITE
            break
        gnow = 1.0 / ((x * r_on + (1.0 - x) * r_off) * C)
        t = k * dt
        if e > cutoff * e_ref:
            status = STATUS_CUTOFF
            times[r] = t
            states[r, 0] = v1
            states[r, 1] = v2
            states[r, 2] = i1
            states[r, 3] = i2
            states[r, 4] = ic
            mem[r] = x
            energy[r] = e
            g_inst[r] = gnow
            g_avg[r] = acc / t
            r += 1
            break
        if k % record_every == 0:
            times[r] = t
            states[r, 0] = v1
            states[r, 1] = v2
            states[r, 2] = i1
            states[r, 3] = i2
            states[r, 4] = ic
            mem[r] = x
            energy[r] = e
            g_inst[r] = gnow
            g_avg[r] = acc / t
            r += 1
    return r, status


@njit(cache=True, nogil=True)
def _rhs_mind_phi(v1, v2, i1, i2, ic, y, gamma, C, L,
                  l_small, l_large, eta, p, i0, omega0):
    yc = _sat(y)
    lc = yc * l_large + (1.0 - yc) * l_small
    w = 1.0 - (2.0 * yc - 1.0) ** (2 * p)
    dy = eta * w * (ic / i0) * omega0
    dv1 = -gamma * v1 - i1 / C - ic / C
    dv2 = +gamma * v2 - i2 / C + ic / C
    di1 = v1 / L
    di2 = v2 / L
    dic = (v1 - v2) / lc - ((l_large - l_small) / lc) * dy * ic
    return dv1, dv2, di1, di2, dic, dy


@njit(cache=True, nogil=True)
def sim_meminductive_phi(phi0, y0, gamma, C, L, l_small, l_large, eta, p, i0, omega0,
                         dt, n_steps, record_every, eps, cutoff,
                         times, states, mem, energy, g_inst, g_avg):
    """Fixed-gamma dimer with a meminductive coupling, physical variables.

    The coupling-current equation carries the back-action term
    -(dL/Lc) * dy/dt * Ic of the state-dependent inductance, and the energy
    uses the instantaneous Lc(y) weight.
    """
    v1 = phi0[0]
    v2 = phi0[1]
    i1 = phi0[2]
    i2 = phi0[3]
    ic = phi0[4]
    y = y0

    lc = y * l_large + (1.0 - y) * l_small
    e0 = 0.5 * (C * (v1 * v1 + v2 * v2) + L * (i1 * i1 + i2 * i2) + lc * ic * ic)
    e_ref = e0 if e0 > 0.0 else 1.0

    times[0] = 0.0
    states[0, 0] = v1
    states[0, 1] = v2
    states[0, 2] = i1
    states[0, 3] = i2
    states[0, 4] = ic
    mem[0] = y
    energy[0] = e0
    g_inst[0] = gamma
    g_avg[0] = gamma
    r = 1
    status = STATUS_OK

    for k in range(1, n_steps + 1):
        h = dt
        nsub = 1
        for level in range(_MAX_HALVINGS + 1):
            tv1 = v1
            tv2 = v2
            ti1 = i1
            ti2 = i2
            tic = ic
            ty = y
            ok = True
            for _ in range(nsub):
                a1, b1, c1, d1, f1, y1 = _rhs_mind_phi(
                    tv1, tv2, ti1, ti2, tic, ty, gamma, C, L,
                    l_small, l_large, eta, p, i0, omega0)
                h2 = 0.5 * h
                a2, b2, c2, d2, f2, y2 = _rhs_mind_phi(
                    tv1 + h2 * a1, tv2 + h2 * b1, ti1 + h2 * c1, ti2 + h2 * d1,
                    tic + h2 * f1, ty + h2 * y1, gamma, C, L,
                    l_small, l_large, eta, p, i0, omega0)
                a3, b3, c3, d3, f3, y3 = _rhs_mind_phi(
                    tv1 + h2 * a2, tv2 + h2 * b2, ti1 + h2 * c2, ti2 + h2 * d2,
                    tic + h2 * f2, ty + h2 * y2, gamma, C, L,
                    l_small, l_large, eta, p, i0, omega0)
                a4, b4, c4, d4, f4, y4 = _rhs_mind_phi(
                    tv1 + h * a3, tv2 + h * b3, ti1 + h * c3, ti2 + h * d3,
                    tic + h * f3, ty + h * y3, gamma, C, L,
                    l_small, l_large, eta, p, i0, omega0)
                s = h / 6.0
                ny = ty + s * (y1 + 2.0 * y2 + 2.0 * y3 + y4)
                if (ny < -_OVERSHOOT * eps or ny > 1.0 + _OVERSHOOT * eps) and level < _MAX_HALVINGS:
                    ok = False
                    break
                if ny < eps:
                    ny = eps
                elif ny > 1.0 - eps:
                    ny = 1.0 - eps
                tv1 += s * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
                tv2 += s * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
                ti1 += s * (c1 + 2.0 * c2 + 2.0 * c3 + c4)
                ti2 += s * (d1 + 2.0 * d2 + 2.0 * d3 + d4)
                tic += s * (f1 + 2.0 * f2 + 2.0 * f3 + f4)
                ty = ny
            if ok:
                v1 = tv1
                v2 = tv2
                i1 = ti1
                i2 = ti2
                ic = tic
                y = ty
                break
            h *= 0.5
            nsub *= 2

        lc = y * l_large + (1.0 - y) * l_small
        e = 0.5 * (C * (v1 * v1 + v2 * v2) + L * (i1 * i1 + i2 * i2) + lc * ic * ic)
        if not (math.isfinite(e) and math.isfinite(v1) and math.isfinite(ic)):
            status = STATUS_NONFINITE
            break
        t = k * dt
        if e > cutoff * e_ref:
            status = STATUS_CUTOFF
            times[r] = t
            states[r, 0] = v1
            states[r, 1] = v2
            states[r, 2] = i1
            states[r, 3] = i2
            states[r, 4] = ic
            mem[r] = y
            energy[r] = e
            g_inst[r] = gamma
            g_avg[r] = gamma
            r += 1
            break
        if k % record_every == 0:
            times[r] = t
            states[r, 0] = v1
            states[r, 1] = v2
            states[r, 2] = i1
            states[r, 3] = i2
            states[r, 4] = ic
            mem[r] = y
            energy[r] = e
            g_inst[r] = gamma
            g_avg[r] = gamma
            r += 1
    return r, status


# ---------------------------------------------------------------------------
# Energy-basis kernels (cross-check path).  The generator is real because
# the Hamiltonian is purely imaginary, so psi stays a real 5-vector whose
# squared norm is the circuit energy.


@njit(cache=True, nogil=True)
def _rhs_static_psi(p1, p2, p3, p4, p5, gamma, mu, omega0):
    d1 = -gamma * p1 - omega0 * p3 - omega0 * mu * p5
    d2 = +gamma * p2 - omega0 * p4 + omega0 * mu * p5
    d3 = omega0 * p1
    d4 = omega0 * p2
    d5 = omega0 * mu * (p1 - p2)
    return d1, d2, d3, d4, d5


@njit(cache=True, nogil=True)
def sim_static_psi(psi0, gamma, mu, omega0, dt, n_steps, record_every, cutoff,
                   times, states, energy):
    p1 = psi0[0]
    p2 = psi0[1]
    p3 = psi0[2]
    p4 = psi0[3]
    p5 = psi0[4]

    e0 = p1 * p1 + p2 * p2 + p3 * p3 + p4 * p4 + p5 * p5
    e_ref = e0 if e0 > 0.0 else 1.0

    times[0] = 0.0
    states[0, 0] = p1
    states[0, 1] = p2
    states[0, 2] = p3
    states[0, 3] = p4
    states[0, 4] = p5
    energy[0] = e0
    r = 1
    status = STATUS_OK

    for k in range(1, n_steps + 1):
        a1, b1, c1, d1, f1 = _rhs_static_psi(p1, p2, p3, p4, p5, gamma, mu, omega0)
        h2 = 0.5 * dt
        a2, b2, c2, d2, f2 = _rhs_static_psi(
            p1 + h2 * a1, p2 + h2 * b1, p3 + h2 * c1, p4 + h2 * d1, p5 + h2 * f1,
            gamma, mu, omega0)
        a3, b3, c3, d3, f3 = _rhs_static_psi(
            p1 + h2 * a2, p2 + h2 * b2, p3 + h2 * c2, p4 + h2 * d2, p5 + h2 * f2,
            gamma, mu, omega0)
        a4, b4, c4, d4, f4 = _rhs_static_psi(
            p1 + dt * a3, p2 + dt * b3, p3 + dt * c3, p4 + dt * d3, p5 + dt * f3,
            gamma, mu, omega0)
        s = dt / 6.0
        p1 += s * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        p2 += s * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
        p3 += s * (c1 + 2.0 * c2 + 2.0 * c3 + c4)
        p4 += s * (d1 + 2.0 * d2 + 2.0 * d3 + d4)
        p5 += s * (f1 + 2.0 * f2 + 2.0 * f3 + f4)

        e = p1 * p1 + p2 * p2 + p3 * p3 + p4 * p4 + p5 * p5
        if not math.isfinite(e):
            status = STATUS_NONFINITE
            break
        if e > cutoff * e_ref:
            status = STATUS_CUTOFF
            times[r] = k * dt
            states[r, 0] = p1
            states[r, 1] = p2
            states[r, 2] = p3
            states[r, 3] = p4
            states[r, 4] = p5
            energy[r] = e
            r += 1
            break
        if k % record_every == 0:
            times[r] = k * dt
            states[r, 0] = p1
            states[r, 1] = p2
            states[r, 2] = p3
            states[r, 3] = p4
            states[r, 4] = p5
            energy[r] = e
            r += 1
    return r, status


@njit(cache=True, nogil=True)
def _rhs_mem_psi(p1, p2, p3, p4, p5, x, C, mu, r_on, r_off, eta, p, v0, omega0):
    xc = _sat(x)
    rx = xc * r_on + (1.0 - xc) * r_off
    g = 1.0 / (rx * C)
    d1 = -g * p1 - omega0 * p3 - omega0 * mu * p5
    d2 = +g * p2 - omega0 * p4 + omega0 * mu * p5
    d3 = omega0 * p1
    d4 = omega0 * p2
    d5 = omega0 * mu * (p1 - p2)
    w = 1.0 - (2.0 * xc - 1.0) ** (2 * p)
    v1 = math.sqrt(2.0 / C) * p1
    dx = eta * w * (r_on / rx) * (v1 / v0) * omega0 / TWO_PI
    return d1, d2, d3, d4, d5, dx


@njit(cache=True, nogil=True)
def sim_memristive_psi(psi0, x0, C, mu, r_on, r_off, eta, p, v0, omega0,
                       dt, n_steps, record_every, eps, cutoff,
                       times, states, mem, energy, g_inst, g_avg):
    p1 = psi0[0]
    p2 = psi0[1]
    p3 = psi0[2]
    p4 = psi0[3]
    p5 = psi0[4]
    x = x0
    acc = 0.0

    e0 = p1 * p1 + p2 * p2 + p3 * p3 + p4 * p4 + p5 * p5
    e_ref = e0 if e0 > 0.0 else 1.0
    g0 = 1.0 / ((x * r_on + (1.0 - x) * r_off) * C)

    times[0] = 0.0
    states[0, 0] = p1
    states[0, 1] = p2
    states[0, 2] = p3
    states[0, 3] = p4
    states[0, 4] = p5
    mem[0] = x
    energy[0] = e0
    g_inst[0] = g0
    g_avg[0] = g0
    r = 1
    status = STATUS_OK

    for k in range(1, n_steps + 1):
        h = dt
        nsub = 1
        for level in range(_MAX_HALVINGS + 1):
            t1 = p1
            t2 = p2
            t3 = p3
            t4 = p4
            t5 = p5
            tx = x
            tacc = acc
            ok = True
            for _ in range(nsub):
                gb = 1.0 / ((tx * r_on + (1.0 - tx) * r_off) * C)
                a1, b1, c1, d1, f1, x1 = _rhs_mem_psi(
                    t1, t2, t3, t4, t5, tx, C, mu, r_on, r_off, eta, p, v0, omega0)
                h2 = 0.5 * h
                a2, b2, c2, d2, f2, x2 = _rhs_mem_psi(
                    t1 + h2 * a1, t2 + h2 * b1, t3 + h2 * c1, t4 + h2 * d1,
                    t5 + h2 * f1, tx + h2 * x1, C, mu, r_on, r_off, eta, p, v0, omega0)
                a3, b3, c3, d3, f3, x3 = _rhs_mem_psi(
                    t1 + h2 * a2, t2 + h2 * b2, t3 + h2 * c2, t4 + h2 * d2,
                    t5 + h2 * f2, tx + h2 * x2, C, mu, r_on, r_off, eta, p, v0, omega0)
                a4, b4, c4, d4, f4, x4 = _rhs_mem_psi(
                    t1 + h * a3, t2 + h * b3, t3 + h * c3, t4 + h * d3,
                    t5 + h * f3, tx + h * x3, C, mu, r_on, r_off, eta, p, v0, omega0)
                s = h / 6.0
                nx = tx + s * (x1 + 2.0 * x2 + 2.0 * x3 + x4)
                if (nx < -_OVERSHOOT * eps or nx > 1.0 + _OVERSHOOT * eps) and level < _MAX_HALVINGS:
                    ok = False
                    break
                if nx < eps:
                    nx = eps
                elif nx > 1.0 - eps:
                    nx = 1.0 - eps
                t1 += s * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
                t2 += s * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
                t3 += s * (c1 + 2.0 * c2 + 2.0 * c3 + c4)
                t4 += s * (d1 + 2.0 * d2 + 2.0 * d3 + d4)
                t5 += s * (f1 + 2.0 * f2 + 2.0 * f3 + f4)
                tx = nx
                ga = 1.0 / ((tx * r_on + (1.0 - tx) * r_off) * C)
                tacc += 0.5 * (gb + ga) * h
            if ok:
                p1 = t1
                p2 = t2
                p3 = t3
                p4 = t4
                p5 = t5
                x = tx
                acc = tacc
                break
            h *= 0.5
            nsub *= 2

        e = p1 * p1 + p2 * p2 + p3 * p3 + p4 * p4 + p5 * p5
        if not math.isfinite(e):
            status = STATUS_NONFINITE
            break
        gnow = 1.0 / ((x * r_on + (1.0 - x) * r_off) * C)
        t = k * dt
        if e > cutoff * e_ref:
            status = STATUS_CUTOFF
            times[r] = t
            states[r, 0] = p1
            states[r, 1] = p2
            states[r, 2] = p3
            states[r, 3] = p4
            states[r, 4] = p5
            mem[r] = x
            energy[r] = e
            g_inst[r] = gnow
            g_avg[r] = acc / t
            r += 1
            break
        if k % record_every == 0:
            times[r] = t
            states[r, 0] = p1
            states[r, 1] = p2
            states[r, 2] = p3
            states[r, 3] = p4
            states[r, 4] = p5
            mem[r] = x
            energy[r] = e
            g_inst[r] = gnow
            g_avg[r] = acc / t
            r += 1
    return r, status


@njit(cache=True, nogil=True)
def _rhs_mind_psi(p1, p2, p3, p4, p5, y, gamma, C, L,
                  l_small, l_large, eta, p, i0, omega0):
    yc = _sat(y)
    lc = yc * l_large + (1.0 - yc) * l_small
    mu_y = math.sqrt(L / lc)
    w = 1.0 - (2.0 * yc - 1.0) ** (2 * p)
    ic = math.sqrt(2.0 / lc) * p5
    dy = eta * w * (ic / i0) * omega0
    d1 = -gamma * p1 - omega0 * p3 - omega0 * mu_y * p5
    d2 = +gamma * p2 - omega0 * p4 + omega0 * mu_y * p5
    d3 = omega0 * p1
    d4 = omega0 * p2
    # gauge term of the time-dependent basis change, sign fixed by the
    # two-path equivalence against the physical-variable integration
    d5 = omega0 * mu_y * (p1 - p2) - 0.5 * ((l_large - l_small) / lc) * dy * p5
    return d1, d2, d3, d4, d5, dy


@njit(cache=True, nogil=True)
def sim_meminductive_psi(psi0, y0, gamma, C, L, l_small, l_large, eta, p, i0, omega0,
                         dt, n_steps, record_every, eps, cutoff,
                         times, states, mem, energy, g_inst, g_avg):
    p1 = psi0[0]
    p2 = psi0[1]
    p3 = psi0[2]
    p4 = psi0[3]
    p5 = psi0[4]
    y = y0

    e0 = p1 * p1 + p2 * p2 + p3 * p3 + p4 * p4 + p5 * p5
    e_ref = e0 if e0 > 0.0 else 1.0

    times[0] = 0.0
    states[0, 0] = p1
    states[0, 1] = p2
    states[0, 2] = p3
    states[0, 3] = p4
    states[0, 4] = p5
    mem[0] = y
    energy[0] = e0
    g_inst[0] = gamma
    g_avg[0] = gamma
    r = 1
    status = STATUS_OK

    for k in range(1, n_steps + 1):
        h = dt
        nsub = 1
        for level in range(_MAX_HALVINGS + 1):
            t1 = p1
            t2 = p2
            t3 = p3
            t4 = p4
            t5 = p5
            ty = y
            ok = True
            for _ in range(nsub):
                a1, b1, c1, d1, f1, y1 = _rhs_mind_psi(
                    t1, t2, t3, t4, t5, ty, gamma, C, L,
                    l_small, l_large, eta, p, i0, omega0)
                h2 = 0.5 * h
                a2, b2, c2, d2, f2, y2 = _rhs_mind_psi(
                    t1 + h2 * a1, t2 + h2 * b1, t3 + h2 * c1, t4 + h2 * d1,
                    t5 + h2 * f1, ty + h2 * y1, gamma, C, L,
                    l_small, l_large, eta, p, i0, omega0)
                a3, b3, c3, d3, f3, y3 = _rhs_mind_psi(
                    t1 + h2 * a2, t2 + h2 * b2, t3 + h2 * c2, t4 + h2 * d2,
                    t5 + h2 * f2, ty + h2 * y2, gamma, C, L,
                    l_small, l_large, eta, p, i0, omega0)
                a4, b4, c4, d4, f4, y4 = _rhs_mind_psi(
                    t1 + h * a3, t2 + h * b3, t3 + h * c3, t4 + h * d3,
                    t5 + h * f3, ty + h * y3, gamma, C, L,
                    l_small, l_large, eta, p, i0, omega0)
                s = h / 6.0
                ny = ty + s * (y1 + 2.0 * y2 + 2.0 * y3 + y4)
                if (ny < -_OVERSHOOT * eps or ny > 1.0 + _OVERSHOOT * eps) and level < _MAX_HALVINGS:
                    ok = False
                    break
                if ny < eps:
                    ny = eps
                elif ny > 1.0 - eps:
                    ny = 1.0 - eps
                t1 += s * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
                t2 += s * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
                t3 += s * (c1 + 2.0 * c2 + 2.0 * c3 + c4)
                t4 += s * (d1 + 2.0 * d2 + 2.0 * d3 + d4)
                t5 += s * (f1 + 2.0 * f2 + 2.0 * f3 + f4)
                ty = ny
            if ok:
                p1 = t1
                p2 = t2
                p3 = t3
                p4 = t4
                p5 = t5
                y = ty
                break
            h *= 0.5
            nsub *= 2

        e = p1 * p1 + p2 * p2 + p3 * p3 + p4 * p4 + p5 * p5
        if not math.isfinite(e):
            status = STATUS_NONFINITE
            break
        t = k * dt
        if e > cutoff * e_ref:
            status = STATUS_CUTOFF
            times[r] = t
            states[r, 0] = p1
            states[r, 1] = p2
            states[r, 2] = p3
            states[r, 3] = p4
            states[r, 4] = p5
            mem[r] = y
            energy[r] = e
            g_inst[r] = gamma
            g_avg[r] = gamma
            r += 1
            break
        if k % record_every == 0:
            times[r] = t
            states[r, 0] = p1
            states[r, 1] = p2
            states[r, 2] = p3
            states[r, 3] = p4
            states[r, 4] = p5
            mem[r] = y
            energy[r] = e
            g_inst[r] = gamma
            g_avg[r] = gamma
            r += 1
    return r, status
