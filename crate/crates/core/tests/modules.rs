use std::f64::consts::PI;

use num_complex::Complex64;
use pdem::cli::verify::{coarse_of, generating_identity_residual, ladder_coefficient, ladder_projection};
use pdem::coherent::{build_cs, energy_moments, energy_moments_series, evolve};
use pdem::numerics::{even_hermite_pos, integrate, ln_gamma, trapezoid, GaussHermite, QuadratureSpec};
use pdem::operators::{
    deformed_derivative, gdoa_ladder, max_abs_on, number_basis, Sign, WINDOW_MARGIN,
};
use pdem::oscillator::{ladder_eigenstate_check, positive_hermite_form};
use pdem::{DeformationProfile, Eigenstate, Grid, GridOperator, PhysicalParams};

fn atomic() -> PhysicalParams {
    PhysicalParams::atomic(2.0)
}

fn unit() -> DeformationProfile {
    DeformationProfile::constant()
}

#[test]
fn ln_gamma_against_factorials_and_half_integers() {
    let mut fact = 1.0f64;
    for n in 1..30 {
        assert!((ln_gamma(n as f64).unwrap() - fact.ln()).abs() < 1e-12 * fact.ln().max(1.0));
        fact *= n as f64;
    }
    // Γ(n+½) = (2n)!√π / (4ⁿ n!)
    for n in 0..15 {
        let num: f64 = (1..=2 * n).map(|k| k as f64).product();
        let den: f64 = 4f64.powi(n) * (1..=n).map(|k| k as f64).product::<f64>();
        let exact = (num / den * PI.sqrt()).ln();
        assert!((ln_gamma(n as f64 + 0.5).unwrap() - exact).abs() < 1e-12 * exact.abs().max(1.0));
    }
}

#[test]
fn gauss_hermite_moments() {
    let gh = GaussHermite::new(30).unwrap();
    for k in 0..10 {
        // ∫ y^{2k} e^{−y²} dy = Γ(k+½)
        let exact = ln_gamma(k as f64 + 0.5).unwrap().exp();
        assert!((gh.integrate(|y| y.powi(2 * k)) - exact).abs() < 1e-10 * exact);
    }
}

#[test]
fn positive_hermite_table() {
    // 𝕳₂(y) = 4y² + 2, 𝕳₄(y) = 16y⁴ + 48y² + 12
    for y in [-1.3, 0.0, 0.4, 2.5] {
        assert!((even_hermite_pos(1, y).unwrap() - (4.0 * y * y + 2.0)).abs() < 1e-12);
        let h4 = 16.0 * y.powi(4) + 48.0 * y * y + 12.0;
        assert!((even_hermite_pos(2, y).unwrap() - h4).abs() < 1e-10 * h4);
    }
}

#[test]
fn eigenstates_have_unit_mass_by_trapezoid() {
    let g = Grid::new(-30.0, 46.0, 20_001).unwrap();
    for n in [0, 1, 2, 5] {
        let psi = Eigenstate::new(n, &atomic(), &unit()).unwrap().eval_many(&g.points());
        let m = trapezoid(&psi.iter().map(|v| v * v).collect::<Vec<_>>(), g.spacing());
        assert!((m - 1.0).abs() < 1e-10, "n = {n}: {m}");
    }
}

#[test]
fn eigenstates_are_orthogonal() {
    let p = atomic();
    let states: Vec<Eigenstate> = (0..5).map(|n| Eigenstate::new(n, &p, &unit()).unwrap()).collect();
    let quad = QuadratureSpec::real_line().with_tolerances(1e-13, 1e-12);
    for a in &states {
        for b in &states {
            let o = integrate(|x| a.eval(x) * b.eval(x), &quad).unwrap();
            let target = if a.n() == b.n() { 1.0 } else { 0.0 };
            assert!((o - target).abs() < 1e-7);
        }
    }
}

#[test]
fn ground_density_peaks_at_the_shifted_centre() {
    let e = Eigenstate::new(0, &atomic(), &unit()).unwrap();
    let g = Grid::new(-6.0, 22.0, 1601).unwrap();
    let rho: Vec<f64> = e.eval_many(&g.points()).iter().map(|v| v * v).collect();
    let (i, _) = rho.iter().enumerate().fold((0, 0.0), |b, (i, &v)| if v > b.1 { (i, v) } else { b });
    assert!((g.x(i) - 8.0).abs() <= g.spacing());
}

#[test]
fn deformed_state_stays_normalized() {
    let q = DeformationProfile::quadratic(0.1).unwrap();
    for n in 0..4 {
        let e = Eigenstate::new(n, &atomic(), &q).unwrap();
        assert!((e.numerical_mass().unwrap() - 1.0).abs() < 1e-8);
    }
}

#[test]
fn printed_positive_form_is_not_normalized() {
    // With the ground-state constant, the n = 1 printed form has squared norm 11/3.
    let c = unit();
    let quad = QuadratureSpec::real_line();
    let n1 = integrate(|x| positive_hermite_form(1, &atomic(), &c, x).unwrap().powi(2), &quad).unwrap();
    assert!((n1 - 11.0 / 3.0).abs() < 1e-8);
    let overlap = integrate(
        |x| positive_hermite_form(0, &atomic(), &c, x).unwrap() * positive_hermite_form(1, &atomic(), &c, x).unwrap(),
        &quad,
    )
    .unwrap();
    assert!(overlap.abs() > 0.1);
}

#[test]
fn ladder_route_converges_for_unit_profile() {
    let p = atomic();
    let r0 = ladder_eigenstate_check(0, &p, &unit(), &Grid::new(-6.0, 22.0, 801).unwrap()).unwrap();
    assert_eq!(r0.max_deviation, 0.0);
    let a = ladder_eigenstate_check(1, &p, &unit(), &Grid::new(-6.0, 22.0, 801).unwrap()).unwrap();
    let b = ladder_eigenstate_check(1, &p, &unit(), &Grid::new(-6.0, 22.0, 1601).unwrap()).unwrap();
    assert!((a.max_deviation / b.max_deviation - 4.0).abs() < 0.5);
}

#[test]
fn ladder_route_converges_for_quadratic_profile() {
    let p = atomic();
    let q = DeformationProfile::quadratic(0.1).unwrap();
    let a = ladder_eigenstate_check(2, &p, &q, &Grid::new(-6.0, 22.0, 401).unwrap()).unwrap();
    let b = ladder_eigenstate_check(2, &p, &q, &Grid::new(-6.0, 22.0, 801).unwrap()).unwrap();
    assert!((a.max_deviation / b.max_deviation - 4.0).abs() < 0.5);
}

#[test]
fn generating_identity_hermite_form_converges() {
    let fine = Grid::new(-6.0, 22.0, 1601).unwrap();
    let coarse = coarse_of(&fine).unwrap();
    for n in 1..=2 {
        let a = generating_identity_residual(&atomic(), n, &coarse).unwrap();
        let b = generating_identity_residual(&atomic(), n, &fine).unwrap();
        assert!((a / b - 4.0).abs() < 0.5, "n = {n}: {a} {b}");
    }
}

/// The printed right-hand side 𝕳₂ₙ(2 − μ/4) leaves an O(1) residual on every grid.
#[test]
fn generating_identity_positive_form_does_not_converge() {
    let p = atomic();
    let a = p.m0 * p.omega0 / (8.0 * p.hbar);
    for npts in [801, 1601] {
        let g = Grid::new(-6.0, 22.0, npts).unwrap();
        let d = deformed_derivative(&unit(), &g).unwrap();
        let xs = g.points();
        let f: Vec<f64> = xs.iter().map(|&x| (-a * (x - 8.0).powi(2)).exp()).collect();
        for n in 1..=2 {
            let mut op = GridOperator::identity(g.n_points());
            for _ in 0..2 * n {
                op = d.compose(&op);
            }
            let df = op.apply(&f);
            let r: Vec<f64> = xs
                .iter()
                .enumerate()
                .map(|(i, &x)| df[i] / f[i] - even_hermite_pos(n, 2.0 - x / 4.0).unwrap())
                .collect();
            assert!(max_abs_on(&r, g.window(WINDOW_MARGIN, op.boundary_rows())) > 1.0);
        }
    }
}

#[test]
fn gdoa_structure_vanishes_for_constant_superpotential() {
    let g = Grid::new(-6.0, 22.0, 401).unwrap();
    let prof = DeformationProfile::quadratic(0.3).unwrap();
    let qm = gdoa_ladder(|_| 0.7, &atomic(), &prof, &g, Sign::Minus).unwrap();
    let qp = gdoa_ladder(|_| 0.7, &atomic(), &prof, &g, Sign::Plus).unwrap();
    let c = qm.commutator(&qp);
    let f = g.sample(|x| (-(x - 8.0).powi(2) / 9.0).exp());
    assert!(max_abs_on(&c.apply(&f), g.interior(c.boundary_rows())) < 1e-12);
}

#[test]
fn ladder_projections_match_coefficients() {
    let g = Grid::new(-6.0, 22.0, 1601).unwrap();
    for (sign, n) in [(Sign::Plus, 0), (Sign::Plus, 1), (Sign::Minus, 1), (Sign::Minus, 2)] {
        let got = ladder_projection(&atomic(), &unit(), n, sign, &g).unwrap();
        assert!((got - ladder_coefficient(&atomic(), n, sign)).abs() < 1e-3);
    }
    // ½√((n+1)(n+½)) at n = 0 in atomic units.
    assert!((ladder_coefficient(&atomic(), 0, Sign::Plus) - 0.5f64.sqrt() / 2.0).abs() < 1e-15);
}

#[test]
fn number_basis_matrices_are_hermitian() {
    let rep = number_basis(&atomic(), 20).unwrap();
    for m in [&rep.hamiltonian, &rep.x, &rep.p, &rep.k0] {
        assert!((m - m.adjoint()).iter().all(|z| z.norm() < 1e-14));
    }
}

#[test]
fn mean_energy_at_unit_label() {
    let expected = (1.0 + 4.0 * 2f64.tanh()) / 8.0;
    assert!((expected - 0.607_013_790_037_908_4).abs() < 1e-15);
    let cs = build_cs(Complex64::new(1.0, 0.0), &atomic(), &unit(), 1e-12).unwrap();
    assert!((energy_moments(&cs).mean_h - expected).abs() < 1e-14);
    assert!((energy_moments_series(&cs, 1e-16).unwrap().mean_h - expected).abs() < 1e-12);
}

#[test]
fn moments_at_large_label() {
    let cs = build_cs(Complex64::from_polar(30.0, 0.4), &atomic(), &unit(), 1e-12).unwrap();
    let m = energy_moments(&cs);
    let s = energy_moments_series(&cs, 1e-16).unwrap();
    assert!(((m.mean_h - s.mean_h) / m.mean_h).abs() < 1e-12);
    assert!(((m.var_h - s.var_h) / m.var_h).abs() < 1e-9);
    // tanh(60) = 1 in double precision: ⟨H⟩ = (1 + 120)/8.
    assert!((m.mean_h - 121.0 / 8.0).abs() < 1e-12);
}

#[test]
fn density_route_b_matches_analytic_resummation() {
    // At t = 0 with real α, Σ (α/4)ⁿH₂ₙ(s)/(n!Γ(n+½)) = e^{−α}cosh(2s√α)/√π.
    let p = atomic();
    for alpha in [0.3, 1.0, 2.5] {
        let cs = build_cs(Complex64::new(alpha, 0.0), &p, &unit(), 1e-14).unwrap();
        let xs: Vec<f64> = (0..50).map(|i| -10.0 + 0.6 * i as f64).collect();
        let rho = evolve(&cs, 0.0).density_route_b(&xs).unwrap();
        for (x, r) in xs.iter().zip(rho) {
            let y = (x - 8.0) / 4.0;
            let s = 2f64.sqrt() * y;
            let series = (-alpha).exp() * (2.0 * s * alpha.sqrt()).cosh() / PI.sqrt();
            let amp = (PI.sqrt() / (2.0 * alpha).cosh()).sqrt() * (PI / (8.0 * PI)).powf(0.25) * (-y * y).exp() * series;
            assert!((r - amp * amp).abs() < 1e-12, "x = {x}");
        }
    }
}
