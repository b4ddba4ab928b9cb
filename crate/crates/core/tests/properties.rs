//! Property tests from the linear algebra up to the builder algebra.

use proptest::prelude::*;

use bredon::analyzer::{analyze, compute_profile, forgetful_feasible};
use bredon::cli::parse_space;
use bredon::cwcell::{build, derived_complexes, EquivariantCellComplex};
use bredon::f2linalg::{F2Matrix, F2Vector};
use bredon::gridmodule::{cohomology_dims, decompose_module, realize, BigradedModule, DimTable, Window};
use bredon::m2algebra::{Decomposition, M2Element, M2Monomial, StandardSummand as S};

fn matrix(max: usize) -> impl Strategy<Value = F2Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(0u8..2, c), r)
            .prop_map(move |rows| F2Matrix::from_rows(&rows, c).expect("shape"))
    })
}

fn monomial() -> impl Strategy<Value = M2Monomial> {
    (any::<bool>(), 0u32..5, 0u32..5).prop_map(|(up, a, b)| {
        if up {
            M2Monomial::Upper(a, b)
        } else {
            M2Monomial::Lower(a, b)
        }
    })
}

fn element() -> impl Strategy<Value = M2Element> {
    prop::collection::vec(monomial(), 0..4).prop_map(|v| v.into_iter().collect())
}

fn summand(m: i64) -> impl Strategy<Value = S> {
    prop_oneof![
        (0..=m)
            .prop_flat_map(|p| (Just(p), 0..=p))
            .prop_map(|(p, q)| S::free(p, q)),
        (0..=m)
            .prop_flat_map(move |r| (Just(r), 0..=(m - r) as u32))
            .prop_map(|(r, n)| S::antipodal(r, n)),
    ]
}

fn decomposition() -> impl Strategy<Value = (Decomposition, usize)> {
    (0usize..=6).prop_flat_map(|m| {
        prop::collection::vec(summand(m as i64), 0..=5).prop_map(move |v| (Decomposition::new(v), m))
    })
}

fn leaf() -> impl Strategy<Value = String> {
    let mut v: Vec<String> = ["point", "c2", "rp2tw", "whisker"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for p in 0..=3 {
        for q in 0..=p {
            v.push(format!("sphere:{p},{q}"));
        }
    }
    for n in 0..=3 {
        v.push(format!("antipodal:{n}"));
    }
    prop::sample::select(v)
}

fn complex(text: &str) -> EquivariantCellComplex {
    build(&parse_space(text).expect("grammar")).expect("builds")
}

fn unique(x: &EquivariantCellComplex) -> Option<Decomposition> {
    analyze(x).expect("analyzes").unique().cloned()
}

fn shift(d: &Decomposition) -> Decomposition {
    d.summands()
        .iter()
        .map(|s| match *s {
            S::Free { p, q } => S::free(p + 1, q),
            S::Antipodal { r, n } => S::antipodal(r + 1, n),
        })
        .collect()
}

fn has_basepoint(x: &EquivariantCellComplex) -> bool {
    x.fixed_counts().first().is_some_and(|&c| c > 0)
}

fn reduced(x: &EquivariantCellComplex) -> Decomposition {
    let d = unique(x).expect("leaf spaces are determined");
    if has_basepoint(x) {
        d.reduced().expect("a basepoint gives a copy of M2")
    } else {
        d
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity_and_transpose(a in matrix(9)) {
        let rr = a.row_reduce();
        prop_assert_eq!(a.rank(), a.transpose().rank());
        prop_assert_eq!(a.rank() + rr.kernel_basis.len(), a.cols());
        for k in &rr.kernel_basis {
            prop_assert!(a.mul_vec(k).unwrap().is_zero());
        }
    }

    #[test]
    fn solve_finds_preimages(a in matrix(8), seed in prop::collection::vec(0u8..2, 8)) {
        let x = F2Vector::from_bits(&seed[..a.cols()]);
        let b = a.mul_vec(&x).unwrap();
        let y = a.solve(&b).unwrap().expect("b is in the image");
        prop_assert_eq!(a.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn ring_axioms(x in element(), y in element(), z in element()) {
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
    }

    #[test]
    fn realized_modules_are_well_formed((d, m) in decomposition()) {
        let w = Window::default_for(m);
        let module = realize(&d, w);
        prop_assert!(module.check_relations().is_ok());
        prop_assert_eq!(module.dims(), &DimTable::of_decomposition(&d, w));
        prop_assert_eq!(decompose_module(&module, m).unwrap(), d.clone());
        let back = BigradedModule::from_json(&module.to_json(false)).unwrap();
        prop_assert_eq!(back, module);
        let text = serde_json::to_string(&d).unwrap();
        prop_assert_eq!(serde_json::from_str::<Decomposition>(&text).unwrap(), d);
    }

    #[test]
    fn leaf_answers_are_consistent(a in leaf()) {
        let x = complex(&a);
        let d = unique(&x).expect("leaf spaces are determined");
        let profile = compute_profile(&x).unwrap();
        prop_assert!(d.satisfies_bounds(x.dimension()));
        prop_assert_eq!(DimTable::of_decomposition(&d, profile.window()), profile.dims.clone());
        prop_assert!(forgetful_feasible(&d, &profile.underlying_dims));
        let scalar = derived_complexes(&x).unwrap().scalar;
        prop_assert_eq!(cohomology_dims(&scalar, profile.window()), profile.dims);
    }

    #[test]
    fn disjoint_union_adds(a in leaf(), b in leaf()) {
        if let Some(both) = unique(&complex(&format!("disjoint({a},{b})"))) {
            let sum = unique(&complex(&a)).unwrap().union(&unique(&complex(&b)).unwrap());
            prop_assert_eq!(both, sum);
        }
    }

    #[test]
    fn wedge_adds_reduced(a in leaf(), b in leaf()) {
        let (x, y) = (complex(&a), complex(&b));
        prop_assume!(has_basepoint(&x) && has_basepoint(&y));
        let w = complex(&format!("wedge({a},{b})"));
        let got = unique(&w).expect("wedges of leaves are determined").reduced().unwrap();
        prop_assert_eq!(got, reduced(&x).union(&reduced(&y)));
    }

    #[test]
    fn suspension_shifts(a in leaf()) {
        let x = complex(&a);
        let s = complex(&format!("susp({a})"));
        let got = unique(&s).expect("suspensions of leaves are determined").reduced().unwrap();
        prop_assert_eq!(got, shift(&reduced(&x)));
    }
}
