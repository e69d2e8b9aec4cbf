use proptest::prelude::*;

use super::*;

fn tower(spec: &str) -> FieldTower {
    FieldTower::parse(spec).unwrap()
}

fn sym(f: &FieldTower, a: u64, b: u64) -> QuaternionSymbol {
    QuaternionSymbol::new(f, SquareClass::from_bits(a), SquareClass::from_bits(b)).unwrap()
}

fn class(f: &FieldTower, pairs: &[(u64, u64)]) -> BrauerClass {
    BrauerClass::new(f, pairs.iter().map(|&(a, b)| (SquareClass::from_bits(a), SquareClass::from_bits(b))).collect())
        .unwrap()
}

const TOWERS: &[&str] = &[
    "C",
    "R",
    "F3",
    "F5",
    "C((t1))",
    "R((t1))",
    "F3((t))",
    "F5((t))",
    "F9((t))",
    "C((t1))((t2))",
    "R((t1))((t2))",
    "F3((t1))((t2))",
    "F7((t1))((t2))",
    "C((t1))((t2))((t3))",
    "R((t1))((t2))((t3))",
    "F3((t1))((t2))((t3))",
    "C((t1))((t2))((t3))((t4))",
    "R((t1))((t2))((t3))((t4))",
];

fn arb_symbol() -> impl Strategy<Value = QuaternionSymbol> {
    (0..TOWERS.len(), any::<u64>(), any::<u64>()).prop_map(|(i, a, b)| {
        let f = tower(TOWERS[i]);
        let mask = f.square_class_count() - 1;
        sym(&f, a & mask, b & mask)
    })
}

#[test]
fn norm_form_examples() {
    let f = tower("R((t))");
    let split = sym(&f, 0, 2);
    assert_eq!(split.norm_form().entries().len(), 4);
    assert!(split.norm_form().is_hyperbolic());
    let r = tower("R");
    let h = sym(&r, 1, 1);
    assert_eq!(h.norm_form(), QuadForm::diag(&r, vec![SquareClass::ONE; 4]).unwrap());
    let c2 = tower("C((t1))((t2))");
    assert!(sym(&c2, 1, 2).norm_form().is_anisotropic());
}

#[test]
fn trace_form_examples() {
    let r = tower("R");
    let m1 = r.minus_one();
    let t = sym(&r, 1, 1).trace_form();
    // ⟨2, -2, -2, -2⟩
    assert_eq!(t.entries(), &[SquareClass::ONE, m1, m1, m1]);
    assert!(t.witt_equivalent(&QuadForm::diag(&r, vec![m1, m1]).unwrap()).unwrap());
    let c = tower("C");
    assert_eq!(sym(&c, 0, 0).trace_form(), QuadForm::diag(&c, vec![SquareClass::ONE; 4]).unwrap());
    let f3 = tower("F3((t))");
    // 2 ≡ u over F3, so T = ⟨u, u·a, u·b, -u·ab⟩
    let q = sym(&f3, 0, 2);
    assert_eq!(q.trace_form().entries()[0], SquareClass::from_bits(1));
}

#[test]
fn trace_tensor_examples() {
    let c = tower("C");
    let one = sym(&c, 0, 0);
    assert_eq!(trace_form_tensor(&c, std::slice::from_ref(&one)).unwrap(), one.trace_form());
    let two = trace_form_tensor(&c, &[one.clone(), one.clone()]).unwrap();
    assert_eq!(two, QuadForm::diag(&c, vec![SquareClass::ONE; 16]).unwrap());
    assert_eq!(trace_form_tensor(&c, &[]).unwrap().dim(), 1);
    let c4 = tower("C((t1))((t2))((t3))((t4))");
    let t = trace_form_tensor(&c4, &[sym(&c4, 1, 2), sym(&c4, 4, 8)]).unwrap();
    assert_eq!(t.dim(), 16);
    let direct = sym(&c4, 1, 2).trace_form().tensor(&sym(&c4, 4, 8).trace_form()).unwrap();
    assert_eq!(t, direct);
    assert_eq!(trace_form_tensor(&c, &[sym(&tower("R"), 0, 0)]), Err(Error::MixedFields));
}

#[test]
fn matrix_double_trace_examples() {
    let r = tower("R((t))");
    let one = QuadForm::diag(&r, vec![SquareClass::ONE]).unwrap();
    assert_eq!(matrix_double_trace(&one), QuadForm::diag(&r, vec![SquareClass::ONE; 2]).unwrap());
    let t = sym(&r, 1, 2).trace_form();
    let doubled = matrix_double_trace(&t);
    assert_eq!(doubled.dim(), 2 * t.dim());
    let ones = QuadForm::diag(&r, vec![SquareClass::ONE; 2]).unwrap();
    assert!(doubled.witt_equivalent(&ones.tensor(&t).unwrap()).unwrap());
    // T_{M₂(F)} = T of the split symbol (1,1) is Witt equivalent to ⟨1,1⟩
    assert!(sym(&r, 0, 0).trace_form().witt_equivalent(&ones).unwrap());
}

#[test]
fn ramified_decompose_examples() {
    let f = tower("C((x))((y))((t))");
    let (x, y, t) = (1u64, 2u64, 4u64);
    let (a0, beta) = class(&f, &[(t, y)]).ramified_decompose().unwrap();
    assert!(a0.normalized().symbols().is_empty());
    assert_eq!(beta, SquareClass::from_bits(y));
    let (a0, beta) = class(&f, &[(x, y)]).ramified_decompose().unwrap();
    assert_eq!(a0.symbols(), &[(SquareClass::from_bits(x), SquareClass::from_bits(y))]);
    assert!(beta.is_trivial());
    let r = tower("R((x))((y))((t))");
    let (x, y, t) = (2u64, 4u64, 8u64);
    let (a0, beta) = class(&r, &[(x | t, y | t)]).ramified_decompose().unwrap();
    assert_eq!(a0.symbols(), &[(SquareClass::from_bits(x), SquareClass::from_bits(y))]);
    assert_eq!(beta, SquareClass::from_bits(1 | x | y));
    assert_eq!(class(&tower("R"), &[]).ramified_decompose(), Err(Error::BaseFieldHasNoVariables));
}

#[test]
fn ramified_decompose_preserves_the_alternating_matrix() {
    // Over a quadratically closed base, α and α₀ + (β, t) have the same oracle index.
    let f = tower("C((t1))((t2))((t3))");
    let top = f.variable_class(2);
    for a in f.square_classes() {
        for b in f.square_classes() {
            let alpha = class(&f, &[(a.bits(), b.bits())]);
            let (a0, beta) = alpha.ramified_decompose().unwrap();
            let mut lifted: Vec<_> = a0.symbols().to_vec();
            lifted.push((beta, top));
            let rebuilt = BrauerClass::new(&f, lifted).unwrap();
            assert_eq!(index_oracle_quadclosed(&alpha).unwrap(), index_oracle_quadclosed(&rebuilt).unwrap());
            let both = alpha.add(&rebuilt).unwrap();
            assert_eq!(index_oracle_quadclosed(&both).unwrap(), 1);
        }
    }
}

#[test]
fn index_examples() {
    let c2 = tower("C((t1))((t2))");
    assert_eq!(BrauerClass::zero(&c2).index(), 1);
    assert_eq!(class(&c2, &[(1, 2)]).index(), 2);
    assert_eq!(index_oracle_quadclosed(&class(&c2, &[(1, 2)])).unwrap(), 2);
    let c4 = tower("C((t1))((t2))((t3))((t4))");
    assert_eq!(class(&c4, &[(1, 2), (4, 8)]).index(), 4);
    assert_eq!(index_oracle_quadclosed(&class(&c4, &[(1, 2), (4, 8)])).unwrap(), 4);
    assert_eq!(index_oracle_quadclosed(&BrauerClass::zero(&c4)).unwrap(), 1);
    let r = tower("R");
    assert_eq!(class(&r, &[(1, 1)]).index(), 2);
    assert_eq!(class(&r, &[(1, 1), (1, 1)]).index(), 1);
    assert!(matches!(index_oracle_quadclosed(&class(&r, &[(1, 1)])), Err(Error::UnsupportedBase(_))));
    let f3 = tower("F3((t))");
    assert_eq!(class(&f3, &[(1, 2)]).index(), 2);
    assert_eq!(class(&f3, &[(1, 1)]).index(), 1);
}

#[test]
fn division_examples() {
    let c = tower("C");
    assert!(!is_division_tensor(&c, &[sym(&c, 0, 0)]).unwrap());
    let c2 = tower("C((t1))((t2))");
    assert!(is_division_tensor(&c2, &[sym(&c2, 1, 2)]).unwrap());
    let c3 = tower("C((t1))((t2))((t3))");
    // (t1,t2) + (t1,t3) = (t1, t2·t3): rank 2, index 2 < 4
    let pair = [sym(&c3, 1, 2), sym(&c3, 1, 4)];
    assert_eq!(index_oracle_quadclosed(&BrauerClass::of_tensor(&c3, &pair).unwrap()).unwrap(), 2);
    assert!(!is_division_tensor(&c3, &pair).unwrap());
    assert_eq!(is_division_tensor(&c3, &[sym(&c2, 1, 2)]), Err(Error::MixedFields));
}

#[test]
fn lambda_prime_small() {
    assert_eq!(lambda_prime_exhaustive(&tower("C")).unwrap(), 0);
    assert_eq!(lambda_prime_exhaustive(&tower("C((t1))((t2))((t3))")).unwrap(), 1);
    assert!(matches!(lambda_prime_exhaustive(&tower("R((t))")), Err(Error::UnsupportedBase(_))));
    let r3 = tower("R((t1))((t2))((t3))");
    assert_eq!(documented_lambda_prime(&r3), Some(2));
    assert_eq!(lambda_prime_by_symbol_enumeration(&r3, 1 << 20).unwrap(), 2);
    assert_eq!(lambda_prime_by_symbol_enumeration(&tower("R((t))"), 1 << 20).unwrap(), 1);
    assert_eq!(lambda_prime_by_symbol_enumeration(&tower("R"), 1 << 20).unwrap(), 1);
    assert_eq!(lambda_prime_by_symbol_enumeration(&tower("F3((t))"), 1 << 20).unwrap(), 1);
    let c3 = tower("C((t1))((t2))((t3))");
    assert_eq!(lambda_prime_by_symbol_enumeration(&c3, 1 << 20).unwrap(), lambda_prime_exhaustive(&c3).unwrap());
}

#[test]
fn norm_and_index_agree_for_single_symbols() {
    for spec in TOWERS.iter().filter(|s| s.matches("((").count() <= 3) {
        let f = tower(spec);
        for a in f.square_classes() {
            for b in f.square_classes() {
                let q = QuaternionSymbol::new(&f, a, b).unwrap();
                let idx = BrauerClass::of_tensor(&f, std::slice::from_ref(&q)).unwrap().index();
                let n = q.norm_form();
                assert_eq!(idx == 2, n.is_anisotropic(), "{spec} {}", q.render());
                assert_eq!(idx == 1, n.is_hyperbolic(), "{spec} {}", q.render());
            }
        }
    }
}

#[test]
fn biquaternion_index_matches_albert_form() {
    // ind((a,b)⊗(c,d)) is 4 iff ⟨-a,-b,ab,c,d,-cd⟩ is anisotropic and 1 iff it is hyperbolic.
    for spec in ["R((t1))((t2))", "F3((t1))((t2))", "F5((t1))((t2))", "C((t1))((t2))((t3))", "R((t1))"] {
        let f = tower(spec);
        let m1 = f.minus_one();
        let classes: Vec<_> = f.square_classes().collect();
        for &a in &classes {
            for &b in &classes {
                for &c in &classes {
                    for &d in &classes {
                        let alpha = BrauerClass::new(&f, vec![(a, b), (c, d)]).unwrap();
                        let albert = QuadForm::diag(&f, vec![m1 * a, m1 * b, a * b, c, d, m1 * c * d]).unwrap();
                        let expected = if albert.is_hyperbolic() {
                            1
                        } else if albert.is_anisotropic() {
                            4
                        } else {
                            2
                        };
                        assert_eq!(alpha.index(), expected, "{spec} {}", alpha.render());
                    }
                }
            }
        }
    }
}

#[test]
fn index_is_invariant_under_trivial_extension() {
    let f = tower("R((t1))((t2))");
    let (g, map) = f.adjoin_sqrt(SquareClass::ONE);
    for a in f.square_classes() {
        for b in f.square_classes() {
            let alpha = BrauerClass::new(&f, vec![(a, b)]).unwrap();
            let pulled = BrauerClass::new(&g, vec![(map.apply(a), map.apply(b))]).unwrap();
            assert_eq!(alpha.index(), pulled.index());
        }
    }
}

#[test]
fn split_symbols() {
    for spec in TOWERS {
        let f = tower(spec);
        for a in f.square_classes() {
            assert_eq!(BrauerClass::new(&f, vec![(a, SquareClass::ONE)]).unwrap().index(), 1);
            assert_eq!(BrauerClass::new(&f, vec![(SquareClass::ONE, a)]).unwrap().index(), 1);
            // (a, -a) is split
            assert_eq!(BrauerClass::new(&f, vec![(a, a * f.minus_one())]).unwrap().index(), 1);
        }
    }
}

#[test]
fn oracle_agrees_with_recursion_through_four_variables() {
    for n in 0..=4 {
        let f = FieldTower::standard(BaseField::QuadClosed, n);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for mask in 0u64..1 << pairs.len() {
            let symbols = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &(i, j))| (f.variable_class(i), f.variable_class(j)))
                .collect();
            let alpha = BrauerClass::new(&f, symbols).unwrap();
            assert_eq!(alpha.index(), index_oracle_quadclosed(&alpha).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn trace_identities(q in arb_symbol()) {
        let f = q.field().clone();
        let m1 = f.minus_one();
        let one = QuadForm::diag(&f, vec![SquareClass::ONE]).unwrap();
        let two = f.class_of_constant(2).unwrap();
        let t = q.trace_form();
        let n = q.norm_form();
        // ⟨-1⟩ ⊥ 2·T_Q ≅ ⟨1⟩ ⊥ -N_Q
        let lhs = one.negate().orth_sum(&t.scale(two).unwrap()).unwrap();
        let rhs = one.orth_sum(&n.negate()).unwrap();
        prop_assert!(lhs.is_isometric(&rhs).unwrap());
        // T_Q ≡ ⟨1,1⟩ ⊥ -2·N_Q
        let ones = QuadForm::diag(&f, vec![SquareClass::ONE; 2]).unwrap();
        let rhs = ones.orth_sum(&n.scale(two * m1).unwrap()).unwrap();
        prop_assert!(t.witt_equivalent(&rhs).unwrap());
    }

    #[test]
    fn trace_form_is_multiplicative(
        i in 0..TOWERS.len(),
        raw in prop::collection::vec((any::<u64>(), any::<u64>()), 0..4),
        cut in 0usize..4,
    ) {
        let f = tower(TOWERS[i]);
        let mask = f.square_class_count() - 1;
        let qs: Vec<_> = raw.iter().map(|&(a, b)| sym(&f, a & mask, b & mask)).collect();
        let cut = cut.min(qs.len());
        let whole = trace_form_tensor(&f, &qs).unwrap();
        let split = trace_form_tensor(&f, &qs[..cut]).unwrap().tensor(&trace_form_tensor(&f, &qs[cut..]).unwrap()).unwrap();
        prop_assert!(whole.is_isometric(&split).unwrap());
    }
}
