use ringsteer::linalg::{
    char_poly, default_rk4_step, determinant, integrate_lyapunov_ode, is_hurwitz, lu_solve,
    solve_lyapunov, LinalgError, Matrix,
};

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn residual_inf(a: &Matrix, x: &[f64], b: &[f64]) -> f64 {
    let n = a.rows();
    (0..n)
        .map(|i| {
            let ax: f64 = (0..n).map(|j| a[(i, j)] * x[j]).sum();
            (ax - b[i]).abs()
        })
        .fold(0.0, f64::max)
}

// ── LU solve ────────────────────────────────────────────────────────────

#[test]
fn lu_solve_identity_returns_rhs() {
    let a = Matrix::identity(4);
    let b = [1.0, -2.0, 3.5, 0.0];
    let x = lu_solve(&a, &b).unwrap();
    assert_eq!(x, b.to_vec());
}

#[test]
fn lu_solve_known_2x2() {
    let a = Matrix::from_rows(&[&[2.0, 1.0], &[1.0, 3.0]]);
    let x = lu_solve(&a, &[5.0, 10.0]).unwrap();
    assert!((x[0] - 1.0).abs() < 1e-14);
    assert!((x[1] - 3.0).abs() < 1e-14);
}

#[test]
fn lu_solve_pivots_on_zero_diagonal() {
    let a = Matrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
    let x = lu_solve(&a, &[2.0, 3.0]).unwrap();
    assert_eq!(x, vec![3.0, 2.0]);
}

#[test]
fn lu_solve_rejects_singular() {
    let a = Matrix::from_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
    assert!(matches!(
        lu_solve(&a, &[1.0, 1.0]),
        Err(LinalgError::SingularMatrix { .. })
    ));
}

#[test]
fn lu_solve_rejects_zero_matrix() {
    let a = Matrix::zeros(3, 3);
    assert!(matches!(
        lu_solve(&a, &[1.0, 0.0, 0.0]),
        Err(LinalgError::SingularMatrix { .. })
    ));
}

#[test]
fn lu_solve_residual_bound_on_structured_6x6() {
    // Moderately conditioned non-symmetric system.
    let mut a = Matrix::zeros(6, 6);
    for i in 0..6 {
        for j in 0..6 {
            a[(i, j)] = ((3 * i + 5 * j + 1) % 11) as f64 - 5.0;
        }
        a[(i, i)] += 12.0;
    }
    let b: Vec<f64> = (0..6).map(|i| (i as f64 - 2.5) * 1.7).collect();
    let x = lu_solve(&a, &b).unwrap();
    let bound = 1e-10 * (1.0 + inf_norm(&b));
    assert!(residual_inf(&a, &x, &b) <= bound);
}

// ── Determinant ─────────────────────────────────────────────────────────

#[test]
fn determinant_of_identity_is_one() {
    assert_eq!(determinant(&Matrix::identity(5)), 1.0);
}

#[test]
fn determinant_known_2x2() {
    let a = Matrix::from_rows(&[&[2.0, 1.0], &[1.0, 3.0]]);
    assert!((determinant(&a) - 5.0).abs() < 1e-14);
}

#[test]
fn determinant_tracks_permutation_sign() {
    let a = Matrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
    assert!((determinant(&a) + 1.0).abs() < 1e-14);
}

#[test]
fn determinant_of_singular_is_zero() {
    let a = Matrix::from_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
    assert_eq!(determinant(&a), 0.0);
}

#[test]
fn determinant_of_diagonal_is_product() {
    let a = Matrix::from_diagonal(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
    assert!((determinant(&a) - 720.0).abs() < 1e-12 * 720.0);
}

// ── Characteristic polynomial ───────────────────────────────────────────

#[test]
fn char_poly_of_scalar() {
    let m = Matrix::from_rows(&[&[5.0]]);
    assert_eq!(char_poly(&m), vec![-5.0, 1.0]);
}

#[test]
fn char_poly_of_diagonal() {
    // Eigenvalues −1, −2 ⇒ (λ+1)(λ+2) = λ² + 3λ + 2.
    let m = Matrix::from_diagonal(&[-1.0, -2.0]);
    let c = char_poly(&m);
    assert_eq!(c.len(), 3);
    assert!((c[0] - 2.0).abs() < 1e-14);
    assert!((c[1] - 3.0).abs() < 1e-14);
    assert_eq!(c[2], 1.0);
}

#[test]
fn char_poly_of_rotation_block() {
    // Eigenvalues ±i ⇒ λ² + 1.
    let m = Matrix::from_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
    let c = char_poly(&m);
    assert!((c[0] - 1.0).abs() < 1e-14);
    assert!(c[1].abs() < 1e-14);
    assert_eq!(c[2], 1.0);
}

#[test]
fn char_poly_of_triangular() {
    // Eigenvalues 1, 2, 3 ⇒ λ³ − 6λ² + 11λ − 6.
    let m = Matrix::from_rows(&[&[1.0, 4.0, -2.0], &[0.0, 2.0, 7.0], &[0.0, 0.0, 3.0]]);
    let c = char_poly(&m);
    let expect = [-6.0, 11.0, -6.0, 1.0];
    for (got, want) in c.iter().zip(expect) {
        assert!((got - want).abs() < 1e-12, "{c:?}");
    }
}

#[test]
fn char_poly_is_monic_with_trace_and_det_invariants() {
    let m = Matrix::from_rows(&[
        &[-1.0, 0.5, 0.0, 2.0],
        &[0.3, -2.0, 1.0, 0.0],
        &[0.0, 1.5, -0.5, 0.7],
        &[-0.2, 0.0, 0.4, -3.0],
    ]);
    let c = char_poly(&m);
    assert_eq!(c.len(), 5);
    assert_eq!(c[4], 1.0);
    // c_{n−1} = −tr M and c_0 = det(−M).
    assert!((c[3] + m.trace()).abs() < 1e-12);
    assert!((c[0] - determinant(&m.scaled(-1.0))).abs() < 1e-10);
}

// ── Hurwitz test ────────────────────────────────────────────────────────

#[test]
fn hurwitz_accepts_stable_diagonal() {
    assert!(is_hurwitz(&Matrix::from_diagonal(&[-1.0, -2.0])));
    assert!(is_hurwitz(&Matrix::from_rows(&[&[-1.0]])));
}

#[test]
fn hurwitz_rejects_positive_eigenvalue() {
    assert!(!is_hurwitz(&Matrix::from_diagonal(&[-1.0, 0.5])));
    assert!(!is_hurwitz(&Matrix::from_rows(&[&[1.0]])));
}

#[test]
fn hurwitz_rejects_marginal_rotation() {
    // Purely imaginary spectrum: stable in no direction.
    let m = Matrix::from_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
    assert!(!is_hurwitz(&m));
}

#[test]
fn hurwitz_rejects_zero_matrix() {
    assert!(!is_hurwitz(&Matrix::zeros(3, 3)));
}

#[test]
fn hurwitz_accepts_triangular_stable() {
    let m = Matrix::from_rows(&[&[-1.0, 3.0], &[0.0, -2.0]]);
    assert!(is_hurwitz(&m));
}

#[test]
fn hurwitz_handles_widely_spread_decay_rates() {
    // Rates spanning ten orders of magnitude must not be mistaken for
    // marginal just because trailing coefficients are tiny.
    let m = Matrix::from_diagonal(&[-1e-6, -1e4, -3.0, -0.02]);
    assert!(is_hurwitz(&m));
    let unstable = Matrix::from_diagonal(&[-1e-6, -1e4, 3.0, -0.02]);
    assert!(!is_hurwitz(&unstable));
}

#[test]
fn hurwitz_detects_coupled_oscillator_damping() {
    // Damped oscillator: x'' + 0.1 x' + x = 0.
    let damped = Matrix::from_rows(&[&[0.0, 1.0], &[-1.0, -0.1]]);
    assert!(is_hurwitz(&damped));
    let antidamped = Matrix::from_rows(&[&[0.0, 1.0], &[-1.0, 0.1]]);
    assert!(!is_hurwitz(&antidamped));
}

// ── Lyapunov solver ─────────────────────────────────────────────────────

#[test]
fn lyapunov_scalar_case() {
    let a = Matrix::from_rows(&[&[-1.0]]);
    let d = Matrix::from_rows(&[&[2.0]]);
    let v = solve_lyapunov(&a, &d).unwrap();
    assert!((v[(0, 0)] - 1.0).abs() < 1e-12);
}

#[test]
fn lyapunov_diagonal_case() {
    let a = Matrix::from_diagonal(&[-1.0, -2.0]);
    let d = Matrix::from_diagonal(&[2.0, 4.0]);
    let v = solve_lyapunov(&a, &d).unwrap();
    assert!(v.approx_eq(&Matrix::identity(2), 1e-12));
}

#[test]
fn lyapunov_known_nondiagonal_case() {
    // A = [[−1, 1], [0, −2]], D = I ⇒ V = [[7/12, 1/12], [1/12, 1/4]].
    let a = Matrix::from_rows(&[&[-1.0, 1.0], &[0.0, -2.0]]);
    let d = Matrix::identity(2);
    let v = solve_lyapunov(&a, &d).unwrap();
    let expect = Matrix::from_rows(&[&[7.0 / 12.0, 1.0 / 12.0], &[1.0 / 12.0, 1.0 / 4.0]]);
    assert!(v.approx_eq(&expect, 1e-12));
}

#[test]
fn lyapunov_result_is_symmetric_and_residual_small() {
    let a = Matrix::from_rows(&[
        &[-2.0, 1.0, 0.0, 0.5],
        &[-1.0, -3.0, 0.2, 0.0],
        &[0.0, -0.2, -1.5, 2.0],
        &[0.5, 0.0, -2.0, -4.0],
    ]);
    let mut d = Matrix::identity(4);
    d[(0, 1)] = 0.3;
    d[(1, 0)] = 0.3;
    let v = solve_lyapunov(&a, &d).unwrap();
    assert!(v.is_symmetric_within(1e-14));
    let av = a.matmul(&v);
    let residual = av.add(&av.transpose()).add(&d).frobenius_norm();
    assert!(residual <= 1e-10 * (1.0 + d.frobenius_norm()));
}

#[test]
fn lyapunov_rejects_unstable_drift() {
    let a = Matrix::from_diagonal(&[1.0, -1.0]);
    let d = Matrix::identity(2);
    assert_eq!(solve_lyapunov(&a, &d), Err(LinalgError::NotHurwitz));
}

#[test]
fn lyapunov_rejects_marginal_drift() {
    let a = Matrix::from_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
    assert_eq!(
        solve_lyapunov(&a, &Matrix::identity(2)),
        Err(LinalgError::NotHurwitz)
    );
}

// ── ODE integration oracle ──────────────────────────────────────────────

#[test]
fn ode_reaches_scalar_steady_state() {
    let a = Matrix::from_rows(&[&[-1.0]]);
    let d = Matrix::from_rows(&[&[2.0]]);
    let v = integrate_lyapunov_ode(&a, &d, 40.0, default_rk4_step(&a)).unwrap();
    assert!((v[(0, 0)] - 1.0).abs() < 1e-9);
}

#[test]
fn ode_matches_lyapunov_solution() {
    let a = Matrix::from_rows(&[
        &[-2.0, 1.0, 0.0, 0.5],
        &[-1.0, -3.0, 0.2, 0.0],
        &[0.0, -0.2, -1.5, 2.0],
        &[0.5, 0.0, -2.0, -4.0],
    ]);
    let mut d = Matrix::identity(4);
    d[(2, 3)] = -0.4;
    d[(3, 2)] = -0.4;
    let v_direct = solve_lyapunov(&a, &d).unwrap();
    let v_ode = integrate_lyapunov_ode(&a, &d, 60.0, default_rk4_step(&a)).unwrap();
    let diff = v_ode.add_scaled(&v_direct, -1.0).frobenius_norm();
    assert!(diff <= 1e-6 * v_direct.frobenius_norm());
}

#[test]
fn ode_short_and_long_horizons_are_consistent() {
    // The closed-form evaluation of many steps must continue the explicit
    // loop exactly: integrating with a step count just below and far above
    // the stepwise cutoff lands on the same steady state.
    let a = Matrix::from_rows(&[&[-1.0, 0.3], &[-0.3, -2.0]]);
    let d = Matrix::identity(2);
    let v_direct = solve_lyapunov(&a, &d).unwrap();
    let few = integrate_lyapunov_ode(&a, &d, 50.0, 50.0 / 10_000.0).unwrap();
    let many = integrate_lyapunov_ode(&a, &d, 50.0, 50.0 / 5_000_000.0).unwrap();
    for v in [few, many] {
        let diff = v.add_scaled(&v_direct, -1.0).frobenius_norm();
        assert!(diff <= 1e-8 * v_direct.frobenius_norm());
    }
}

#[test]
fn ode_diverges_for_unstable_drift() {
    let a = Matrix::from_rows(&[&[1.0]]);
    let d = Matrix::from_rows(&[&[1.0]]);
    // Stepwise path: e^{2t} overflows before t = 400.
    assert_eq!(
        integrate_lyapunov_ode(&a, &d, 400.0, 0.02),
        Err(LinalgError::NonFinite)
    );
    // Closed-form path: same divergence through the powered map.
    assert_eq!(
        integrate_lyapunov_ode(&a, &d, 400.0, 1e-5),
        Err(LinalgError::NonFinite)
    );
}

#[test]
fn default_step_scales_inversely_with_drift() {
    let a = Matrix::from_diagonal(&[-2.0, -4.0]);
    assert!((default_rk4_step(&a) - 0.0025).abs() < 1e-18);
}

// ── Matrix basics ───────────────────────────────────────────────────────

#[test]
fn matrix_transpose_and_product() {
    let a = Matrix::from_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
    let at = a.transpose();
    assert_eq!(at[(0, 1)], 3.0);
    let prod = a.matmul(&Matrix::identity(2));
    assert!(prod.approx_eq(&a, 0.0));
}

#[test]
fn matrix_block_extraction() {
    let a = Matrix::from_rows(&[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0], &[7.0, 8.0, 9.0]]);
    let b = a.block(1, 0, 2, 2);
    assert_eq!(b[(0, 0)], 4.0);
    assert_eq!(b[(1, 1)], 8.0);
}

#[test]
fn matrix_symmetrized_averages_off_diagonal() {
    let a = Matrix::from_rows(&[&[1.0, 2.0], &[4.0, 3.0]]);
    let s = a.symmetrized();
    assert_eq!(s[(0, 1)], 3.0);
    assert_eq!(s[(1, 0)], 3.0);
    assert_eq!(s[(0, 0)], 1.0);
}

#[test]
#[should_panic(expected = "dimensions")]
fn matrix_dimension_cap_is_enforced() {
    let _ = Matrix::zeros(37, 1);
}

#[test]
#[should_panic(expected = "finite")]
fn matrix_rejects_non_finite_entries() {
    let _ = Matrix::from_rows(&[&[f64::NAN]]);
}
