//! Randomized properties over shapes, flags, tableaux and matrices.

use std::collections::BTreeMap;

use proptest::prelude::*;

use setvalued::crystal::{Crystal, OrZero};
use setvalued::expansions::{grothendieck_flagged, key_expansion_G, Expansion, ExpansionJson};
use setvalued::insertion::{
    biword_of_matrix, burge, burge_inverse, matrix_of_biword, psi, split_components, uncrowd_inverse,
};
use setvalued::keys::{key_expand, key_polynomial};
use setvalued::poly::{Monomial, Poly, PolyJson};
use setvalued::shape::{Composition, Flag, SkewShape};
use setvalued::tableau::{SetValuedTableau, SvtEnumerator, SvtFilter, TableauJson};

/// A skew shape with `|λ| ≤ max` together with a flag over `1..=n`.
fn shape_and_flag(max: usize, n: usize) -> impl Strategy<Value = (SkewShape, Flag)> {
    (prop::collection::vec(0..=max, 1..=4), prop::collection::vec(0..=max, 4), prop::collection::vec(1..=n, 4))
        .prop_filter_map("empty shape", move |(raw, cut, bounds)| {
            let mut outer = raw;
            outer.sort_unstable_by(|a, b| b.cmp(a));
            let mut budget = max;
            for p in &mut outer {
                *p = (*p).min(budget);
                budget -= *p;
            }
            outer.retain(|&p| p > 0);
            if outer.is_empty() {
                return None;
            }
            let mut inner: Vec<usize> = outer.iter().zip(&cut).map(|(&p, &c)| c % (p + 1)).collect();
            for k in 1..inner.len() {
                inner[k] = inner[k].min(inner[k - 1]);
            }
            let shape = SkewShape::from_parts(outer, inner).ok()?;
            if shape.is_empty() {
                return None;
            }
            let mut b: Vec<usize> = bounds[..shape.rows()].to_vec();
            b.sort_unstable();
            Some((shape, Flag::new(b).ok()?))
        })
}

/// One flagged SVT picked out of the full enumeration.
fn svt(max: usize, n: usize) -> impl Strategy<Value = SetValuedTableau> {
    (shape_and_flag(max, n), any::<prop::sample::Index>()).prop_filter_map("no tableaux", |((shape, phi), ix)| {
        let all = SvtEnumerator::new(&shape, &phi, SvtFilter::default()).ok()?.collect();
        if all.is_empty() {
            None
        } else {
            Some(all[ix.index(all.len())].clone())
        }
    })
}

/// `Σ x^{wt}` over column-strict fillings found by trying every filling.
fn brute_flagged_schur(shape: &SkewShape, flag: &Flag) -> Poly {
    let boxes: Vec<(usize, usize)> = shape.boxes().collect();
    let max: Vec<u32> = boxes.iter().map(|&(r, _)| flag.get(r) as u32).collect();
    let at = |fill: &[u32], r: usize, c: usize| boxes.iter().position(|&b| b == (r, c)).map(|k| fill[k]);
    let mut fill = vec![1u32; boxes.len()];
    let mut out = Poly::zero();
    loop {
        let ok = boxes.iter().enumerate().all(|(k, &(r, c))| {
            at(&fill, r, c + 1).is_none_or(|v| fill[k] <= v) && at(&fill, r + 1, c).is_none_or(|v| fill[k] < v)
        });
        if ok {
            let mut x = vec![0u32; Flag::max(flag)];
            for &v in &fill {
                x[v as usize - 1] += 1;
            }
            out.add_term(Monomial::new(x, vec![]), 1);
        }
        let Some(k) = (0..fill.len()).find(|&k| fill[k] < max[k]) else {
            return out;
        };
        fill[k] += 1;
        fill[..k].fill(1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn burge_round_trip(rows in 1usize..=4, cols in 1usize..=4, seed in prop::collection::vec(0u32..=3, 16)) {
        let a: Vec<Vec<u32>> = (0..rows).map(|r| seed[r * 4..r * 4 + cols].to_vec()).collect();
        let bw = biword_of_matrix(&a);
        prop_assert_eq!(matrix_of_biword(&bw, rows, cols), a.clone());
        let (p, q) = burge(&bw);
        prop_assert_eq!(p.shape(), q.shape());
        prop_assert_eq!(burge_inverse(&p, &q).unwrap(), bw);
    }

    #[test]
    fn t_zero_is_flagged_schur((shape, phi) in shape_and_flag(8, 3)) {
        let g = grothendieck_flagged(&shape, &phi).unwrap();
        prop_assert_eq!(g.at_t_zero(), brute_flagged_schur(&shape, &phi));
    }

    #[test]
    fn uncrowding_inverts_componentwise(t in svt(7, 3)) {
        let rec = psi(&t).unwrap();
        let parts = split_components(&t);
        prop_assert_eq!(parts.len(), rec.components.len());
        for (part, c) in parts.iter().zip(&rec.components) {
            let back = uncrowd_inverse(part.shape(), &c.output_shape, &c.recording, &c.straightened).unwrap();
            prop_assert_eq!(&back, part);
        }
        prop_assert_eq!(rec.image.weight(3), t.weight(3));
    }

    #[test]
    fn crystal_moves_invert_and_keep_excess(t in svt(7, 3), i in 1usize..3) {
        if let OrZero::Elem(u) = t.lower(i) {
            prop_assert_eq!(u.raise(i), OrZero::Elem(t.clone()));
            prop_assert_eq!(u.excess(), t.excess());
            prop_assert!(u.validate().is_ok());
        }
        if let OrZero::Elem(u) = t.raise(i) {
            prop_assert_eq!(u.lower(i), OrZero::Elem(t.clone()));
            prop_assert_eq!(u.excess(), t.excess());
        }
        let (eps, phi) = t.string_counts(i);
        let w = t.weight(3);
        prop_assert_eq!(phi as i64 - eps as i64, w.get(i - 1) as i64 - w.get(i) as i64);
    }

    #[test]
    fn tableau_json_round_trip(t in svt(8, 4)) {
        let text = serde_json::to_string(&t.to_json()).unwrap();
        let parsed: TableauJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(SetValuedTableau::from_json(&parsed).unwrap(), t);
    }

    #[test]
    fn expansion_and_polynomial_json_round_trip((shape, phi) in shape_and_flag(5, 3)) {
        let n = Flag::max(&phi);
        let e = key_expansion_G(&shape, &phi, n).unwrap();
        let text = serde_json::to_string(&e.to_json()).unwrap();
        let parsed: ExpansionJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&Expansion::from_json(&parsed), &e);
        let p = e.to_poly();
        let text = serde_json::to_string(&p.to_json(n, n)).unwrap();
        let parsed: PolyJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(Poly::from_json(&parsed).unwrap(), p);
    }

    #[test]
    fn key_expand_inverts_combinations(terms in prop::collection::vec((prop::collection::vec(0usize..=3, 3), -3i64..=3), 0..5)) {
        let mut want: BTreeMap<Composition, i64> = BTreeMap::new();
        let mut f = Poly::zero();
        for (alpha, c) in terms {
            let alpha = Composition::new(alpha);
            f += &key_polynomial(&alpha).scale(c);
            *want.entry(alpha).or_insert(0) += c;
        }
        want.retain(|_, c| *c != 0);
        prop_assert_eq!(key_expand(&f, 3).unwrap(), want);
    }
}
