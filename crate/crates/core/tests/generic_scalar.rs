//! The whole pipeline is generic over the real scalar; these checks
//! instantiate it at `f32` (loose tolerances) and pin down thread safety.

use diskapprox::diagnostics::lebesgue_constant;
use diskapprox::hb::{hb_gram, SymbolB};
use diskapprox::poly::TaylorPoly;
use diskapprox::schemes::{cesaro, gram_projection, Scheme};
use diskapprox::spaces::{SpaceHandle, WeightSequence};
use num_complex::Complex;

#[test]
fn single_precision_pipeline_works_at_loose_tolerance() {
    let f = TaylorPoly::<f32>::from_real(&[1.0, 0.5, 0.25, 0.125]).unwrap();

    // norms
    let h2 = SpaceHandle::<f32>::hardy(8);
    let n = h2.norm(&f).unwrap();
    let want = (1.0f32 + 0.25 + 0.0625 + 0.015625).sqrt();
    assert!((n - want).abs() < 1e-6);

    // Cesaro mean
    let sigma = cesaro(2, &f);
    assert!((sigma.coeff(1).re - 2.0 / 3.0 * 0.5).abs() < 1e-6);

    // projection on a weighted space
    let alpha: Vec<f32> = (0..=8).map(|k| 1.0 + k as f32 * 0.1).collect();
    let space = SpaceHandle::weighted(2.0f32, WeightSequence::new(alpha).unwrap()).unwrap();
    let p = gram_projection(&space, 1, &f).unwrap();
    assert_eq!(p.degree(), Some(1));

    // H(b) gram at f32
    let sym = SymbolB::new(TaylorPoly::<f32>::from_real(&[0.0, 0.5]).unwrap()).unwrap();
    let d = hb_gram(sym, 2).unwrap();
    assert!((d.gram().entry(1, 1).re - 4.0 / 3.0).abs() < 1e-5);

    // Lebesgue constant
    let l1 = lebesgue_constant::<f32>(1, 128).unwrap();
    assert!((l1 - 4.0 / std::f32::consts::PI).abs() < 1e-4);
}

#[test]
fn handles_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<SpaceHandle<f64>>();
    assert_send_sync::<Scheme<f64>>();
    assert_send_sync::<TaylorPoly<f64>>();

    // concurrent norm queries against one shared space
    let space = std::sync::Arc::new(SpaceHandle::<f64>::hardy(32));
    let f = TaylorPoly::<f64>::from_real(&[1.0, 2.0, 3.0]).unwrap();
    let expected = space.norm(&f).unwrap();
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let space = space.clone();
            let f = f.clone();
            std::thread::spawn(move || space.norm(&f).unwrap())
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), expected);
    }
    let _ = Complex::new(0.0f64, 0.0);
}
