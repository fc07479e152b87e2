use otfkm::cayley::{CayleyElement, Dim};
use otfkm::twisted::{
    lemma_real_part, lemma_star_inner, orthogonality_split, star_p, twisted_inner, twisted_inner_short, CayleyVector,
    TwistIndex,
};
use proptest::prelude::*;

fn vector(dim: Dim, len: usize) -> impl Strategy<Value = CayleyVector> {
    prop::collection::vec(-1.0f64..1.0, dim.size() * len).prop_map(move |v| CayleyVector::from_reals(dim, &v).unwrap())
}

fn element(dim: Dim) -> impl Strategy<Value = CayleyElement> {
    prop::collection::vec(-1.0f64..1.0, dim.size()).prop_map(move |v| CayleyElement::from_slice(dim, &v).unwrap())
}

#[test]
fn twist_index_bounds() {
    assert!(TwistIndex::new(3, 3).is_err());
    assert!(TwistIndex::new(0, 0).is_err());
    let t = TwistIndex::definite(4).unwrap();
    assert_eq!((t.k(), t.p()), (4, 3));
    assert!(t.is_definite());
}

#[test]
fn definite_twist_is_hermitian_product() {
    let dim = Dim::Quaternion;
    let z = CayleyVector::from_reals(dim, &(0..12).map(|i| (i as f64).sin()).collect::<Vec<_>>()).unwrap();
    let w = CayleyVector::from_reals(dim, &(0..12).map(|i| (i as f64).cos()).collect::<Vec<_>>()).unwrap();
    let t = TwistIndex::definite(3).unwrap();
    let a = twisted_inner(&z, &w, t).unwrap();
    let b = z.hermitian(&w).unwrap();
    assert!(a.dist(&b) < 1e-15);
}

#[test]
fn short_product_needs_k_minus_one() {
    let t = TwistIndex::new(3, 1).unwrap();
    let x = CayleyVector::zeros(Dim::Octonion, 3);
    assert!(twisted_inner_short(&x, &x, t).is_err());
    assert!(star_p(&CayleyElement::one(Dim::Octonion), &x, t).is_err());
}

#[test]
fn real_part_lemma_singular_at_minus_n() {
    let t = TwistIndex::new(2, 0).unwrap();
    let x = CayleyVector::unit(Dim::Quaternion, 1, 0);
    let zk = -CayleyElement::one(Dim::Quaternion);
    assert!(lemma_real_part(&x, &x, &zk, t).is_err());
}

proptest! {
    #[test]
    fn star_inner_lemma(dim in prop::sample::select(vec![Dim::Quaternion, Dim::Octonion]), k in 2usize..5, p in 0usize..4,
                        seed in prop::collection::vec(-1.0f64..1.0, 40)) {
        prop_assume!(p < k);
        let d = dim.size();
        let t = TwistIndex::new(k, p).unwrap();
        let w = CayleyVector::from_reals(dim, &seed[..d * (k - 1)]).unwrap();
        let eps = CayleyElement::from_slice(dim, &seed[32..32 + d]).unwrap();
        prop_assert!(lemma_star_inner(&eps, &w, t).unwrap() <= 1e-13);
    }

    #[test]
    fn real_part_lemma(x in vector(Dim::Octonion, 3), w in vector(Dim::Octonion, 3), zk in element(Dim::Octonion), p in 0usize..4) {
        let t = TwistIndex::new(4, p).unwrap();
        let mut zk = zk;
        zk.coords_mut()[0] = 0.0;
        prop_assert!(lemma_real_part(&x, &w, &zk, t).unwrap() <= 1e-13);
    }

    #[test]
    fn orthogonality_is_real_and_imaginary_parts(z in vector(Dim::Quaternion, 3), w in vector(Dim::Quaternion, 3), p in 0usize..3) {
        let t = TwistIndex::new(3, p).unwrap();
        let tw = twisted_inner(&z, &w, t).unwrap();
        let (re, im) = orthogonality_split(&z, &w, t).unwrap();
        prop_assert!((tw.re() - re).abs() <= 1e-14);
        prop_assert!((tw.im().norm() - im).abs() <= 1e-14);
    }
}
