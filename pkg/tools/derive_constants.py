"""Derive the frozen reference constants used in the unit tests.

Runs with mpmath at 30 significant digits, independently of the numpy /
scipy code paths in the package.  Output is pasted into
``tests/derived_values.py``; rerun after changing anything here.

    python tools/derive_constants.py > tests/derived_values.py
"""
import mpmath as mp

mp.mp.dps = 30
inf = mp.inf


def phi(x):
    return mp.npdf(x)


def Phi(x):
    return mp.ncdf(x)


def t_pdf(nu):
    c = mp.gamma((nu + 1) / mp.mpf(2)) / (mp.sqrt(nu * mp.pi) * mp.gamma(nu / mp.mpf(2)))
    return lambda x: c * (1 + x * x / nu) ** (-(nu + 1) / mp.mpf(2))


def t_cdf(nu):
    # regularized incomplete beta form
    def F(x):
        z = nu / (nu + x * x)
        tail = mp.betainc(nu / mp.mpf(2), mp.mpf(1) / 2, 0, z, regularized=True) / 2
        return 1 - tail if x > 0 else tail
    return F


def k_nu(nu):
    f, F = t_pdf(nu), t_cdf(nu)
    return mp.quad(lambda x: x * x * f(x) * (F(x) ** 2 + (1 - F(x)) ** 2), [0, 1, 5, 50, inf])


def mix_sub(name, lam):
    lam = mp.mpf(lam)
    ints = {
        "A": lambda x: x * phi(x) ** 2 * Phi(x / lam),
        "C": lambda x: x * x * phi(x) * Phi(x / lam) ** 2,
        "D": lambda x: x * x * phi(x) * Phi(x) * Phi(x / lam),
        "E": lambda x: phi(x) ** 2 * phi(x / lam),
    }
    return mp.quad(ints[name], [-inf, -5, 0, 5, inf])


def nm_pdf(lam, eps, x):
    return eps * phi(x / lam) / lam + (1 - eps) * phi(x)


def g_nm(lam, eps):
    # E|X - Y| from the distribution of X - Y: a three-component normal mixture
    comps = [((1 - eps) ** 2, mp.sqrt(2)), (2 * eps * (1 - eps), mp.sqrt(1 + lam * lam)),
             (eps * eps, lam * mp.sqrt(2))]
    return sum(w * s * mp.sqrt(2 / mp.pi) for w, s in comps)


def j_triple(pdf, cdf_lo, cdf_hi_excess, pts):
    return mp.quad(lambda x: pdf(x) * cdf_lo(x) * cdf_hi_excess(x), pts)


def j_normal():
    # E[(X - Y)(Z - X); Y <= X <= Z]: inner integrals are x Phi + phi and phi - x (1 - Phi)
    return mp.quad(lambda x: phi(x) * (x * Phi(x) + phi(x)) * (phi(x) - x * (1 - Phi(x))), [-inf, 0, inf])


def j_t(nu):
    f, F = t_pdf(nu), t_cdf(nu)
    pts = [-inf, -20, -3, 0, 3, 20, inf]

    def lower(x):
        return mp.quad(lambda y: (x - y) * f(y), [-inf, x])

    def upper(x):
        return mp.quad(lambda z: (z - x) * f(z), [x, inf])

    return mp.quad(lambda x: f(x) * lower(x) * upper(x), pts)


def emit(name, value, comment):
    print(f"{name} = {mp.nstr(value, 17)}  # {comment}")


if __name__ == "__main__":
    print('"""Reference constants derived at 30 digits with mpmath (tools/derive_constants.py)."""')
    print()
    emit("LOG_BETA_HALF_HALF", mp.log(mp.beta(0.5, 0.5)), "ln B(1/2, 1/2) = ln pi")
    emit("LOG_BETA_3_4", mp.log(mp.beta(3, 4)), "ln B(3, 4) = ln(1/60)")
    emit("PHI_1", Phi(1), "standard normal cdf at 1")
    emit("PHI_INV_075", mp.sqrt(2) * mp.erfinv(mp.mpf(0.5)), "standard normal 0.75 quantile")
    emit("NM_3_0008_PDF_0", nm_pdf(3, mp.mpf("0.008"), 0), "nm(3, 0.008) density at 0")
    emit("T5_CDF_1", t_cdf(5)(mp.mpf(1)), "t_5 cdf at 1")
    emit("T5_Q_09", mp.findroot(lambda q: t_cdf(5)(q) - mp.mpf("0.9"), 1.5), "t_5 0.9 quantile")
    emit("NORMAL_TRUNC_MEAN_0", mp.quad(lambda x: x * phi(x), [0, inf]), "E[X; X >= 0] at N(0, 1)")
    emit("T5_TRUNC_MEAN_1", mp.quad(lambda x: x * t_pdf(5)(x), [1, inf]), "E[X; X >= 1] at t_5")
    emit("NORMAL_I1", mp.quad(lambda x: x * x * phi(x) * Phi(x) ** 2, [-inf, 0, inf]), "int x^2 phi Phi^2")
    emit("NORMAL_J", j_normal(), "J at N(0, 1)")
    for nu in (5, 16, 41):
        emit(f"K_NU_{nu}", k_nu(nu), f"int x^2 f F^2 for t_{nu}")
    emit("J_T_5", j_t(5), "J at t_5 by nested quadrature")
    for name in "ACDE":
        for lam in (2, 3):
            emit(f"MIX_{name}_{lam}", mix_sub(name, lam), f"mixture integral {name}({lam})")
    emit("G_NM_3_0008", g_nm(3, mp.mpf("0.008")), "E|X - Y| at nm(3, 0.008)")
    emit("IF_GINI_NORMAL_0", 4 * phi(0) - 4 / mp.sqrt(mp.pi), "Gini influence at N(0, 1), x = 0")
    emit("IF_GINI_NORMAL_2", 4 * phi(2) + 2 * 2 * (2 * Phi(2) - 1) - 4 / mp.sqrt(mp.pi),
         "Gini influence at N(0, 1), x = 2")
    emit("IF_MEANDEV_NORMAL_2", 2 - mp.sqrt(2 / mp.pi), "mean-deviation influence at N(0, 1), x = 2")
