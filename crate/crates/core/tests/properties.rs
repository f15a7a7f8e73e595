use proptest::prelude::*;

use rslab::coincnf::{eval_cnf, plan_cnf, sequence_probability};
use rslab::fourier::FourierContext;
use rslab::recovery::{self, Anchor, Instance};
use rslab::rscode::{
    dual_code, interpolate, orthogonal_exhaustive, weight_distribution_brute, weight_distribution_exact, RsCode,
};
use rslab::stats::isotonic;
use rslab::{Error, Field, FieldElem};

const SMALL: &[(u32, u32)] = &[(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (2, 4)];

fn field_strategy() -> impl Strategy<Value = Field> {
    prop::sample::select(SMALL).prop_map(|(p, k)| Field::gf(p, k).unwrap())
}

/// A field, a degree below q, and random lists as bit rows.
fn instance_strategy() -> impl Strategy<Value = (Field, usize, Vec<Vec<bool>>)> {
    field_strategy().prop_flat_map(|f| {
        let q = f.q() as usize;
        let max_d = (q - 1).min(3);
        (
            Just(f),
            0..=max_d,
            prop::collection::vec(prop::collection::vec(prop::bool::weighted(0.6), q), q),
        )
    })
}

fn to_instance(f: &Field, rows: &[Vec<bool>]) -> Instance {
    let lists: Vec<Vec<FieldElem>> = rows
        .iter()
        .map(|r| (0..r.len()).filter(|&z| r[z]).map(|z| FieldElem(z as u32)).collect())
        .collect();
    Instance::from_lists(f, &lists).unwrap()
}

fn brute(code: &RsCode, inst: &Instance) -> u64 {
    code.codewords()
        .unwrap()
        .filter(|w| w.values.iter().enumerate().all(|(i, &v)| inst.contains(i, v)))
        .count() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interpolation_inverts_encoding(
        f in field_strategy(),
        seed in any::<u64>(),
    ) {
        let q = f.q();
        let d = (seed % q as u64) as usize;
        let coeffs: Vec<FieldElem> = (0..=d).map(|i| FieldElem(((seed >> (i % 48)) as u32 ^ i as u32) % q)).collect();
        let code = RsCode::full(&f, d).unwrap();
        let word = code.encode(&coeffs).unwrap();
        // any d+1 of the positions determine the polynomial
        let start = (seed as usize / 7) % (q as usize - d);
        let pts: Vec<_> = (start..=start + d).map(|i| (code.positions()[i], word.values[i])).collect();
        let mut back = interpolate(&f, &pts).unwrap();
        back.resize(d + 1, FieldElem::ZERO);
        prop_assert_eq!(back, coeffs);
    }

    #[test]
    fn search_matches_enumeration((f, d, rows) in instance_strategy()) {
        let code = RsCode::full(&f, d).unwrap();
        let inst = to_instance(&f, &rows);
        let expect = brute(&code, &inst);
        prop_assert_eq!(recovery::count(&code, &inst, 0).unwrap().count, expect);
        prop_assert_eq!(recovery::count_with(&code, &inst, 0, Anchor::FixedPrefix).unwrap().count, expect);
        prop_assert_eq!(recovery::decide(&code, &inst).unwrap(), expect > 0);
        let r = recovery::count(&code, &inst, 4).unwrap();
        for w in &r.witnesses {
            let word = code.encode(w).unwrap();
            prop_assert!(word.values.iter().enumerate().all(|(i, &v)| inst.contains(i, v)));
        }
    }

    #[test]
    fn adding_points_never_hurts((f, d, rows) in instance_strategy(), extra in any::<u64>()) {
        let code = RsCode::full(&f, d).unwrap();
        let inst = to_instance(&f, &rows);
        let mut bigger = inst.clone();
        let q = f.q() as u64;
        bigger.insert((extra % q) as usize, FieldElem(((extra >> 20) % q) as u32));
        let a = recovery::count(&code, &inst, 0).unwrap().count;
        let b = recovery::count(&code, &bigger, 0).unwrap().count;
        prop_assert!(a <= b);
        prop_assert!(!recovery::decide(&code, &inst).unwrap() || recovery::decide(&code, &bigger).unwrap());
    }

    #[test]
    fn translation_preserves_count((f, d, rows) in instance_strategy(), s in any::<u32>(), t in any::<u32>()) {
        let code = RsCode::full(&f, d).unwrap();
        let inst = to_instance(&f, &rows);
        let moved = inst.translate(FieldElem(s % f.q()), FieldElem(t % f.q())).unwrap();
        prop_assert_eq!(
            recovery::count(&code, &inst, 0).unwrap().count,
            recovery::count(&code, &moved, 0).unwrap().count
        );
    }

    #[test]
    fn punctured_search_matches_enumeration((f, d, rows) in instance_strategy(), mask in any::<u32>()) {
        let q = f.q() as usize;
        let positions: Vec<FieldElem> = (0..q).filter(|i| mask >> (i % 32) & 1 == 1).map(|i| FieldElem(i as u32)).collect();
        prop_assume!(positions.len() > d);
        let code = RsCode::punctured(&f, d, positions.clone()).unwrap();
        let inst = to_instance(&f, &rows).restrict(&positions).unwrap();
        prop_assert_eq!(recovery::count(&code, &inst, 0).unwrap().count, brute(&code, &inst));
    }

    #[test]
    fn punctured_duals_are_orthogonal(f in field_strategy(), d in 0usize..3, mask in any::<u32>()) {
        let q = f.q() as usize;
        let positions: Vec<FieldElem> = (0..q).filter(|i| mask >> (i % 32) & 1 == 1).map(|i| FieldElem(i as u32)).collect();
        prop_assume!(positions.len() > d && positions.len() <= 8);
        let code = RsCode::punctured(&f, d, positions.clone()).unwrap();
        prop_assume!(code.size() * (q as f64).powi((positions.len() - d - 1) as i32) <= 1e6);
        let dual = dual_code(&code).unwrap();
        prop_assert_eq!(code.dimension() + dual.dimension(), positions.len());
        prop_assert!(orthogonal_exhaustive(&code.to_linear(), &dual.to_linear()).unwrap());
    }

    #[test]
    fn fourier_count_is_exact((f, d, rows) in instance_strategy()) {
        let code = RsCode::full(&f, d).unwrap();
        let ctx = match FourierContext::new(&code) {
            Ok(c) => c,
            Err(_) => return Ok(()),
        };
        let inst = to_instance(&f, &rows);
        let direct = recovery::count(&code, &inst, 0).unwrap().count as f64;
        prop_assert!((ctx.decompose(&inst).unwrap().count - direct).abs() <= 1e-6 * code.size());
    }

    #[test]
    fn isotonic_is_monotone_and_mean_preserving(values in prop::collection::vec(0.0f64..1.0, 1..30)) {
        let w = vec![1.0; values.len()];
        let fit = isotonic(&values, &w);
        prop_assert!(fit.windows(2).all(|p| p[0] <= p[1] + 1e-12));
        let s0: f64 = values.iter().sum();
        let s1: f64 = fit.iter().sum();
        prop_assert!((s0 - s1).abs() < 1e-9);
    }

    #[test]
    fn coin_plans_keep_their_invariants(e in 0.0f64..1.0, s in 2u32..12) {
        let p = 2f64.powf(-(s as f64) * e).min(0.999);
        // p close to 1 can need more than s^2 variables before any prefix fits
        let plan = match plan_cnf(p, s) {
            Err(Error::EmptyPlan { .. }) => return Ok(()),
            r => r.unwrap(),
        };
        prop_assert!(plan.sandwich_holds());
        prop_assert!((plan.t as u64) < (s as u64).pow(2));
        prop_assert_eq!(sequence_probability(&plan.k), plan.fair_exact().clone());
        prop_assert!(eval_cnf(&plan, &vec![true; plan.t]).unwrap());
        prop_assert!(!eval_cnf(&plan, &vec![false; plan.t]).unwrap());
    }
}

#[test]
fn weight_formula_matches_enumeration_on_small_grid() {
    for &(p, k) in SMALL {
        let f = Field::gf(p, k).unwrap();
        for d in 0..f.q() as usize {
            let code = RsCode::full(&f, d).unwrap();
            if code.size() > 1e5 {
                continue;
            }
            assert_eq!(
                weight_distribution_exact(&code).unwrap(),
                weight_distribution_brute(&code).unwrap(),
                "q={} d={d}",
                f.q()
            );
        }
    }
}
