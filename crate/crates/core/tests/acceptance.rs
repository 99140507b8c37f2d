//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Run with `cargo test -p diskapprox --test acceptance` (add
//! `-- --nocapture` to see the PASS lines).

use std::time::Instant;

use diskapprox::diagnostics::{gliding_hump, lebesgue_constant};
use diskapprox::embedding::{
    inclusion_constant, isometry_spot_check, membership_beyond_disk, verify_inclusion_bound,
    CoefficientRule, EmbeddingSpec,
};
use diskapprox::hb::{fejer_riesz_mate, hb_gram, hb_gram_with_working_factor, SymbolB};
use diskapprox::poly::TaylorPoly;
use diskapprox::schemes::{
    build_scheme_from_approximants, cesaro, cesaro_by_averaging, gram_projection, partial_sum,
    Scheme, TriangularArray,
};
use diskapprox::spaces::{GramMatrix, SpaceHandle, WeightSequence};
use diskapprox::C64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn random_poly(rng: &mut StdRng, deg: usize) -> TaylorPoly<f64> {
    TaylorPoly::new(
        (0..=deg)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    )
    .unwrap()
}

fn decaying_poly(rng: &mut StdRng, deg: usize, ratio: f64) -> TaylorPoly<f64> {
    TaylorPoly::new(
        (0..=deg)
            .map(|k| {
                let scale = ratio.powi(k as i32);
                c(
                    scale * rng.gen_range(-1.0..1.0),
                    scale * rng.gen_range(-1.0..1.0),
                )
            })
            .collect(),
    )
    .unwrap()
}

fn hb_space(horizon: usize) -> SpaceHandle<f64> {
    let sym = SymbolB::new(TaylorPoly::from_real(&[0.5, 0.5]).unwrap()).unwrap();
    SpaceHandle::hb(hb_gram(sym, horizon).unwrap())
}

/// Dense complex Gaussian elimination with partial pivoting (test oracle).
fn dense_solve(matrix: &[C64], rhs: &[C64], dim: usize) -> Vec<C64> {
    let mut m = matrix.to_vec();
    let mut b = rhs.to_vec();
    for col in 0..dim {
        let mut piv = col;
        for r in col..dim {
            if m[r * dim + col].norm() > m[piv * dim + col].norm() {
                piv = r;
            }
        }
        if piv != col {
            for k in 0..dim {
                m.swap(col * dim + k, piv * dim + k);
            }
            b.swap(col, piv);
        }
        let p = m[col * dim + col];
        for r in (col + 1)..dim {
            let factor = m[r * dim + col] / p;
            if factor.norm() == 0.0 {
                continue;
            }
            for k in col..dim {
                let v = m[col * dim + k];
                m[r * dim + k] -= factor * v;
            }
            let bc = b[col];
            b[r] -= factor * bc;
        }
    }
    let mut x = vec![c(0.0, 0.0); dim];
    for i in (0..dim).rev() {
        let mut s = b[i];
        for k in (i + 1)..dim {
            s -= m[i * dim + k] * x[k];
        }
        x[i] = s / m[i * dim + i];
    }
    x
}

/// Positive semidefiniteness within `slack`, via Cholesky of `A + slack*I`.
fn is_psd_within(entries: &[C64], dim: usize, slack: f64) -> bool {
    let mut a = entries.to_vec();
    for j in 0..dim {
        a[j * dim + j] += c(slack, 0.0);
    }
    let mut l = vec![c(0.0, 0.0); dim * dim];
    for j in 0..dim {
        let mut diag = a[j * dim + j].re;
        for k in 0..j {
            diag -= l[j * dim + k].norm_sqr();
        }
        if diag <= 0.0 || diag.is_nan() {
            return false;
        }
        let piv = diag.sqrt();
        l[j * dim + j] = c(piv, 0.0);
        for i in (j + 1)..dim {
            let mut s = a[i * dim + j];
            for k in 0..j {
                s -= l[i * dim + k] * l[j * dim + k].conj();
            }
            l[i * dim + j] = s / piv;
        }
    }
    true
}

#[test]
fn criterion_01_hardy_identity_suite() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(101);
    let hardy = SpaceHandle::<f64>::hardy(128);
    let identity_gram = SpaceHandle::gram(GramMatrix::diagonal(&vec![1.0; 81]).unwrap());
    for _ in 0..100 {
        let f = random_poly(&mut rng, 80);
        let n = rng.gen_range(0..=64);
        let truncated = partial_sum(n, &f);
        let p = gram_projection(&hardy, n, &f).unwrap();
        assert!(p.max_coeff_distance(&truncated) <= 1e-12);
        let p = gram_projection(&identity_gram, n, &f).unwrap();
        assert!(p.max_coeff_distance(&truncated) <= 1e-12);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!("criterion 01 (Hardy identity suite, {elapsed:?}): PASS");
}

#[test]
fn criterion_02_cesaro_correctness() {
    let mut rng = StdRng::seed_from_u64(102);
    for _ in 0..50 {
        let f = random_poly(&mut rng, 256);
        for n in [0usize, 1, 2, 17, 100, 256, 300] {
            let a = cesaro(n, &f);
            let b = cesaro_by_averaging(n, &f);
            assert!(a.max_coeff_distance(&b) <= 1e-12);
        }
    }
    // sigma_2(z^2) = z^2/3 exactly, in both forms
    let z2 = TaylorPoly::<f64>::monomial(2);
    let want = c(1.0 / 3.0, 0.0);
    assert_eq!(cesaro(2, &z2).coeff(2), want);
    assert_eq!(cesaro_by_averaging(2, &z2).coeff(2), want);
    assert_eq!(cesaro(2, &z2).coeff(1), c(0.0, 0.0));
    println!("criterion 02 (Cesaro two-form agreement and exact example): PASS");
}

#[test]
fn criterion_03_fejer_contraction() {
    let mut rng = StdRng::seed_from_u64(103);
    let sup = SpaceHandle::<f64>::sup_circle(16, 256).unwrap();
    for _ in 0..100 {
        let f = random_poly(&mut rng, 48);
        let nf = sup.norm(&f).unwrap();
        for n in 0..=128 {
            let s = sup.norm(&cesaro(n, &f)).unwrap();
            assert!(s <= 1.01 * nf, "n={n}: {s} vs {nf}");
        }
    }
    println!("criterion 03 (Fejer contraction on the sampled sup norm): PASS");
}

#[test]
fn criterion_04_lebesgue_growth() {
    let start = Instant::now();
    // the constant kernel integrates to 1 up to the last bit of rounding
    let l0 = lebesgue_constant::<f64>(0, 64).unwrap();
    assert!((l0 - 1.0).abs() <= 4.0 * f64::EPSILON, "L_0 = {l0}");
    let l1 = lebesgue_constant::<f64>(1, 128).unwrap();
    assert!((l1 - 4.0 / std::f64::consts::PI).abs() <= 1e-5, "L_1 = {l1}");
    let l10 = lebesgue_constant::<f64>(10, 64 * 11).unwrap();
    let l100 = lebesgue_constant::<f64>(100, 64 * 101).unwrap();
    assert!(l100 / l10 >= 1.3, "ratio {}", l100 / l10);
    for n in [0usize, 1, 10, 100] {
        let q = 64 * (n + 1);
        let a = lebesgue_constant::<f64>(n, q).unwrap();
        let b = lebesgue_constant::<f64>(n, 2 * q).unwrap();
        assert!((a - b).abs() <= 1e-6, "n={n}: {a} vs {b}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!("criterion 04 (Lebesgue constant values and growth, {elapsed:?}): PASS");
}

#[test]
fn criterion_05_gliding_hump_divergence_witness() {
    let hump = gliding_hump::<f64>(3, 8, 20_000).unwrap();
    let f = &hump.poly;
    let deg = f.degree_or_zero();
    let nodes = 16 * (deg + 1);

    // incremental evaluation of all partial sums and Cesaro means on a fixed
    // circle grid: s_{n} adds c_n z^n per node, sigma_n averages the running
    // sum of partial-sum values
    let phase: Vec<C64> = (0..nodes)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / nodes as f64;
            c(theta.cos(), theta.sin())
        })
        .collect();
    let mut power = vec![c(1.0, 0.0); nodes];
    let mut s_value = vec![c(0.0, 0.0); nodes];
    let mut sigma_accum = vec![c(0.0, 0.0); nodes];
    let mut max_s = 0.0f64;
    let mut max_sigma = 0.0f64;
    let mut f_norm = 0.0f64;
    for n in 0..=deg {
        let coeff = f.coeff(n);
        let mut s_peak = 0.0f64;
        let mut sigma_peak = 0.0f64;
        for j in 0..nodes {
            s_value[j] += coeff * power[j];
            power[j] *= phase[j];
            sigma_accum[j] += s_value[j];
            s_peak = s_peak.max(s_value[j].norm_sqr());
            sigma_peak = sigma_peak.max(sigma_accum[j].norm_sqr());
        }
        max_s = max_s.max(s_peak.sqrt());
        max_sigma = max_sigma.max(sigma_peak.sqrt() / (n as f64 + 1.0));
        if n == deg {
            f_norm = s_peak.sqrt();
        }
    }

    assert!(f_norm <= 20.0, "||f|| = {f_norm}");
    let spike_ratio = max_s / f_norm;
    let fejer_ratio = max_sigma / f_norm;
    assert!(spike_ratio >= 2.0, "partial-sum spike ratio {spike_ratio}");
    assert!(fejer_ratio <= 1.01, "Cesaro ratio {fejer_ratio}");
    println!(
        "criterion 05 (gliding hump: spike ratio {spike_ratio:.3} >= 2, Cesaro ratio {fejer_ratio:.4} <= 1.01): PASS"
    );
}

#[test]
fn criterion_06_hb_oracle_suite() {
    // b = z/2 against the dense Toeplitz oracle
    let horizon = 16usize;
    let sym = SymbolB::new(TaylorPoly::from_real(&[0.0, 0.5]).unwrap()).unwrap();
    let descriptor = hb_gram(sym.clone(), horizon).unwrap();
    let gram = descriptor.gram();

    // oracle: solve the dense W x W system T_conj(a) u = T_conj(b) z^j
    let mate = fejer_riesz_mate(&sym).unwrap();
    let w = descriptor.working_horizon();
    let da = mate.degree();
    let mut toeplitz = vec![c(0.0, 0.0); w * w];
    for i in 0..w {
        for k in i..w.min(i + da + 1) {
            toeplitz[i * w + k] = mate.poly().coeff(k - i).conj();
        }
    }
    let b_poly = sym.poly();
    let db = sym.degree();
    let companions: Vec<Vec<C64>> = (0..=horizon)
        .map(|j| {
            let mono = TaylorPoly::<f64>::monomial(j);
            let mut rhs = vec![c(0.0, 0.0); w];
            for (i, slot) in rhs.iter_mut().enumerate() {
                let mut s = c(0.0, 0.0);
                for t in 0..=db {
                    s += b_poly.coeff(t).conj() * mono.coeff(i + t);
                }
                *slot = s;
            }
            dense_solve(&toeplitz, &rhs, w)
        })
        .collect();
    for j in 0..=horizon {
        for k in 0..=horizon {
            let mut oracle = if j == k { c(1.0, 0.0) } else { c(0.0, 0.0) };
            for (u, v) in companions[j].iter().zip(&companions[k]) {
                oracle += u * v.conj();
            }
            let expect = if j != k {
                0.0
            } else if j == 0 {
                1.0
            } else {
                4.0 / 3.0
            };
            assert!((gram.entry(j, k) - oracle).norm() <= 1e-10);
            assert!((gram.entry(j, k) - c(expect, 0.0)).norm() <= 1e-10);
        }
    }

    // b = (1+z)/2: working-horizon stability at horizon 16
    let sym = SymbolB::new(TaylorPoly::from_real(&[0.5, 0.5]).unwrap()).unwrap();
    let d4 = hb_gram_with_working_factor(sym.clone(), 16, 4).unwrap();
    let d8 = hb_gram_with_working_factor(sym, 16, 8).unwrap();
    let mut worst = 0.0f64;
    let mut shifted = Vec::new();
    for j in 0..=16 {
        for k in 0..=16 {
            worst = worst.max((d4.gram().entry(j, k) - d8.gram().entry(j, k)).norm());
            let delta = if j == k { 1.0 } else { 0.0 };
            shifted.push(d4.gram().entry(j, k) - c(delta, 0.0));
        }
    }
    assert!(worst < 1e-6, "gram moved by {worst} under doubling");

    // Gram - I positive semidefinite within 1e-8
    assert!(is_psd_within(&shifted, 17, 1e-8));
    println!("criterion 06 (H(b) Toeplitz oracle, stability, dominance): PASS");
}

#[test]
fn criterion_07_projection_scheme_on_hb() {
    let mut rng = StdRng::seed_from_u64(107);
    let space = hb_space(24);

    // full projection property suite
    for _ in 0..5 {
        let f = random_poly(&mut rng, 20);
        let nf = space.norm(&f).unwrap();
        let mut last = f64::INFINITY;
        for n in 0..=20usize {
            let p = gram_projection(&space, n, &f).unwrap();
            let err = space.norm(&p.sub(&f)).unwrap();
            // optimality against 100 random competitors
            for _ in 0..100 {
                let q = random_poly(&mut rng, n);
                assert!(err <= space.norm(&q.sub(&f)).unwrap() + 1e-9);
            }
            // idempotence
            let pp = gram_projection(&space, n, &p).unwrap();
            assert!(pp.max_coeff_distance(&p) <= 1e-10);
            // Pythagoras
            let np = space.norm(&p).unwrap();
            assert!((nf * nf - (np * np + err * err)).abs() <= 1e-8 * (1.0 + nf * nf));
            // monotone errors
            assert!(err <= last + 1e-10);
            last = err;
        }
    }

    // scheme built from a 5-function dense sample
    let sample: Vec<TaylorPoly<f64>> = (0..5).map(|_| decaying_poly(&mut rng, 20, 0.35)).collect();
    let (scheme, certificate) =
        build_scheme_from_approximants(&space, &sample, 1.0, 20).unwrap();
    for n in 0..=20usize {
        let target = 1.0 / (n as f64 + 1.0);
        assert!(certificate.residuals[n] <= target + 1e-10);
        // independent re-verification of the certified residual
        let constrained = n.min(sample.len());
        let mut worst = 0.0f64;
        for y in &sample[..constrained] {
            let p = gram_projection(&space, certificate.degrees[n], y).unwrap();
            worst = worst.max(space.norm(&p.sub(y)).unwrap());
        }
        assert!((worst - certificate.residuals[n]).abs() <= 1e-12);
        assert!(worst <= target + 1e-10);
        // the delivered scheme respects the degree budget
        for y in &sample {
            assert!(scheme.apply(n, y).unwrap().degree_or_zero() <= n);
        }
    }
    assert_eq!(certificate.norm_bound, 1.0);
    println!("criterion 07 (projection suite and certified scheme on H(b)): PASS");
}

#[test]
fn criterion_08_weighted_model_suite() {
    // monomial norms equal the weights exactly
    let alpha: Vec<f64> = (0..=512).map(|n| (n + 1) as f64).collect();
    let spec = EmbeddingSpec::new(WeightSequence::new(alpha.clone()).unwrap(), 2.0, 1.0).unwrap();
    assert_eq!(spec.space().monomial_norms(512).unwrap(), alpha);

    // isometry on 1000 random vectors
    let worst = isometry_spot_check(&spec, 1000, 108).unwrap();
    assert!(worst <= 1e-12, "isometry drift {worst}");

    // inclusion constants: alpha = 1 gives exactly 2 at r = 1/2,
    // alpha_n = n+1 gives 2 ln 2
    let ones = EmbeddingSpec::new(WeightSequence::<f64>::ones(512), 2.0, 1.0).unwrap();
    let c_half = inclusion_constant(&ones, 0.5).unwrap().value;
    assert!((c_half - 2.0).abs() <= 1e-10, "C_1/2 = {c_half}");
    let c_lin = inclusion_constant(&spec, 0.5).unwrap().value;
    assert!((c_lin - 2.0 * 2.0f64.ln()).abs() <= 1e-10, "C_1/2 = {c_lin}");

    // sampled ratios never exceed the constant
    for &(s, r) in &[(&ones, 0.5f64), (&spec, 0.5), (&spec, 0.9)] {
        let report = verify_inclusion_bound(s, 1000, r, 108).unwrap();
        assert!(report.bound_respected);
        assert!(report.max_ratio <= report.c_r);
    }

    // membership bound for 1/(1 - z/2) under alpha_n = n+1 is exactly 4
    let rule = CoefficientRule::Geometric { ratio: c(0.5, 0.0) };
    let report = membership_beyond_disk(&spec, &rule, 2.0).unwrap();
    assert!((report.bound - 4.0).abs() <= 1e-9, "bound {}", report.bound);
    println!("criterion 08 (weighted model: norms, isometry, inclusion, membership): PASS");
}

#[test]
fn criterion_09_degree_and_linearity_contracts() {
    let mut rng = StdRng::seed_from_u64(109);
    let hb = hb_space(16);
    let hardy = SpaceHandle::<f64>::hardy(16);
    let sample: Vec<TaylorPoly<f64>> = (0..3).map(|_| decaying_poly(&mut rng, 8, 0.4)).collect();
    let (built, _) = build_scheme_from_approximants(&hardy, &sample, 1.0, 16).unwrap();
    let random_rows: Vec<Vec<C64>> = (0..17)
        .map(|n| {
            (0..=n)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect()
        })
        .collect();
    let schemes: Vec<Scheme<f64>> = vec![
        Scheme::PartialSum,
        Scheme::Cesaro,
        Scheme::Array(TriangularArray::vallee_poussin(17)),
        Scheme::Array(TriangularArray::new(random_rows).unwrap()),
        Scheme::GramProjection(hb.clone()),
        built,
    ];
    for scheme in &schemes {
        for _ in 0..10 {
            let f = random_poly(&mut rng, 14);
            let g = random_poly(&mut rng, 14);
            let a = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let b = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            for n in [0usize, 1, 2, 7, 13, 16] {
                let image = scheme.apply(n, &f).unwrap();
                assert!(
                    image.degree_or_zero() <= n,
                    "degree bound broken by {}",
                    scheme.kind_name()
                );
                let combined = scheme.apply(n, &f.scale(a).add(&g.scale(b))).unwrap();
                let split = scheme
                    .apply(n, &f)
                    .unwrap()
                    .scale(a)
                    .add(&scheme.apply(n, &g).unwrap().scale(b));
                assert!(
                    combined.max_coeff_distance(&split) <= 1e-10,
                    "linearity broken by {}",
                    scheme.kind_name()
                );
            }
        }
    }
    println!("criterion 09 (degree and linearity contracts for every scheme kind): PASS");
}
