//! With `n = 0` the multiwavelet transform is the orthonormal Haar
//! transform.

use alpert::transform::{analyze, synthesize, PiecewisePolySignal};
use alpert::SurdSum;

fn signal(values: &[i64]) -> PiecewisePolySignal<SurdSum> {
    let levels = values.len().trailing_zeros() as usize;
    PiecewisePolySignal::new(0, levels, values.iter().map(|&v| vec![SurdSum::integer(v)]).collect()).unwrap()
}

#[test]
fn four_cells_by_hand() {
    // pairs (1,3), (5,7): averages 4/√2 = 2√2 and 6√2, differences √2 and √2;
    // then (2√2, 6√2): average 8, difference 4
    let c = analyze(&signal(&[1, 3, 5, 7])).unwrap();
    let sqrt2 = SurdSum::sqrt(2);
    assert_eq!(c.scaling0, vec![SurdSum::integer(8)]);
    assert_eq!(c.detail[0], vec![vec![SurdSum::integer(4)]]);
    assert_eq!(c.detail[1], vec![vec![sqrt2.clone()], vec![sqrt2]]);
}

#[test]
fn two_cells_by_hand() {
    let c = analyze(&signal(&[2, -4])).unwrap();
    let sqrt2 = SurdSum::sqrt(2);
    assert_eq!(c.scaling0, vec![-&sqrt2]);
    assert_eq!(c.detail[0], vec![vec![&SurdSum::integer(-3) * &sqrt2]]);
    assert_eq!(synthesize(&c).unwrap(), signal(&[2, -4]));
}

#[test]
fn float_haar_by_hand() {
    let cells: Vec<Vec<f64>> = [1.0, 3.0, 5.0, 7.0, 0.0, 0.0, 2.0, -2.0].iter().map(|&v| vec![v]).collect();
    let s = PiecewisePolySignal::new(0, 3, cells).unwrap();
    let c = analyze(&s).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let finest = [(3.0 - 1.0) * h, (7.0 - 5.0) * h, 0.0, (-2.0 - 2.0) * h];
    for (got, want) in c.detail[2].iter().zip(finest) {
        assert!((got[0] - want).abs() < 1e-15);
    }
    let total: f64 = [1.0, 3.0, 5.0, 7.0, 0.0, 0.0, 2.0, -2.0].iter().sum::<f64>() / 8f64.sqrt();
    assert!((c.scaling0[0] - total).abs() < 1e-14);
}
