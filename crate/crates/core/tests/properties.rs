use duoidal::graded::{cauchy, hilbert, internal_hom, GradedObject, Product};
use duoidal::linalg::{format_rational, frac, parse_rational, Matrix};
use duoidal::measuring::{transpose_maps, untranspose_maps};
use duoidal::random::Gen;
use duoidal::structures::{dual, example_library};
use proptest::prelude::*;

fn dims(len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..3, len)
}

/// Dimensions of `C◊X` in each degree.
fn diamond_dims(diamond: Product, c: &[usize], x: &[usize]) -> Vec<usize> {
    (0..c.len())
        .map(|n| match diamond {
            Product::Hadamard => c[n] * x[n],
            _ => (0..=n).map(|i| c[i] * x[n - i]).sum(),
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transpose_round_trip(c in dims(3), x in dims(3), b in dims(3), seed: u64, cauchy_diamond: bool) {
        let diamond = if cauchy_diamond { Product::Cauchy } else { Product::Hadamard };
        let (cg, xg, bg) = (GradedObject::new(c.clone()), GradedObject::new(x.clone()), GradedObject::new(b.clone()));
        let mut g = Gen::new(seed);
        let src = diamond_dims(diamond, &c, &x);
        let maps: Vec<Matrix> = (0..3).map(|n| g.matrix(b[n], src[n])).collect();
        let t = transpose_maps(diamond, &cg, &xg, &bg, &maps).unwrap();
        let h = internal_hom(diamond, &cg, &bg).unwrap();
        for (n, m) in t.iter().enumerate() {
            prop_assert_eq!(m.shape(), (h.dim(n), x[n]));
        }
        prop_assert_eq!(untranspose_maps(diamond, &cg, &xg, &bg, &t).unwrap(), maps);
    }

    #[test]
    fn hilbert_series_multiply(v in dims(5), w in dims(5)) {
        let h = hilbert(&cauchy(&GradedObject::new(v.clone()), &GradedObject::new(w.clone())).unwrap());
        let naive: Vec<usize> = (0..5).map(|n| (0..=n).map(|k| v[k] * w[n - k]).sum()).collect();
        prop_assert_eq!(h, naive);
    }

    #[test]
    fn rational_strings_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let r = frac(n, d);
        let s = format_rational(&r);
        prop_assert_eq!(parse_rational(&s).unwrap(), r);
        prop_assert_eq!(format_rational(&parse_rational(&s).unwrap()), s);
    }

    #[test]
    fn double_dual_is_identity(seed: u64, product in 0usize..2) {
        let mut g = Gen::new(seed);
        let product = [Product::Hadamard, Product::Cauchy][product];
        let m = g.monoid(product, 3);
        prop_assert_eq!(dual(&dual(&m).unwrap()).unwrap(), m);
    }
}

#[test]
fn library_double_duals() {
    for name in ["poly", "exterior", "exp", "com"] {
        let s = example_library(name, 3).unwrap();
        assert_eq!(dual(&dual(&s).unwrap()).unwrap(), s, "{name}");
    }
}
