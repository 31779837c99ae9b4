//! The ten acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use setvalued::crystal::{
    demazure_generate, rows_as_tensor, string_lengths, tensor_lowering, tensor_raising, tensor_to_rows, Crystal, OrZero,
};
use setvalued::expansions::{
    classify_rpp, expand_in_G, expand_in_g, flagged_schur, grothendieck_flagged, key_expansion_G, row_reading_rpp,
    stable_G_n, Basis, Expansion, PsiTable, Source,
};
use setvalued::insertion::{
    biword_of_matrix, burge, burge_inverse, flag_trace, is_yamanouchi, matrix_of_biword, uncrowd, uncrowd_inverse,
};
use setvalued::keys::{b_word, demazure_op, key_polynomial, word_set_w};
use setvalued::poly::Poly;
use setvalued::shape::{Composition, Flag, Partition, SkewShape};
use setvalued::tableau::{RecordingTableau, SetValuedTableau, SvtEnumerator, SvtFilter};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn skew(o: &[usize], i: &[usize]) -> SkewShape {
    SkewShape::from_parts(o.to_vec(), i.to_vec()).unwrap()
}

fn comp(v: &[usize]) -> Composition {
    Composition::new(v.to_vec())
}

fn flag(v: &[usize]) -> Flag {
    Flag::new(v.to_vec()).unwrap()
}

fn svt(o: &[usize], i: &[usize], rows: Vec<Vec<Vec<u32>>>) -> SetValuedTableau {
    SetValuedTableau::from_lists(skew(o, i), rows).unwrap()
}

fn within(start: Instant, budget: Duration) -> Check {
    let t = start.elapsed();
    ensure(t <= budget, || format!("took {t:.2?}, budget {budget:.0?}"))
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let shape = skew(&[2, 2, 0], &[1, 0, 0]);
    let phi = flag(&[1, 3, 3]);
    let e = key_expansion_G(&shape, &phi, 3).map_err(|e| e.to_string())?;
    let want = "κ_(1,0,2) - t2*κ_(2,0,2) - t2*κ_(1,1,2) + t2^2*κ_(2,1,2)";
    ensure(e.to_string() == want, || format!("got {e}"))?;
    let direct = grothendieck_flagged(&shape, &phi).unwrap();
    ensure(e.to_poly() == direct, || "monomial expansion differs from enumeration".into())?;
    within(start, Duration::from_secs(1))
}

fn expansion(basis: Basis, n: usize, terms: &[(&[usize], &[usize], i64)]) -> Expansion {
    let mut e = Expansion::new(basis, n);
    for &(t, g, c) in terms {
        e.add(&comp(t), &comp(g), c);
    }
    e
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let shape = skew(&[3, 2, 0], &[1, 0, 0]);
    let classes = classify_rpp(&shape, &Flag::full(3, 3), 3).map_err(|e| e.to_string())?;
    let mut ceqs: Vec<Composition> = classes.iter().map(|c| c.ceq.clone()).collect();
    ceqs.sort();
    ensure(ceqs == vec![comp(&[0, 0, 0]), comp(&[0, 0, 0]), comp(&[1, 0, 0])], || format!("ceq values {ceqs:?}"))?;
    for c in &classes {
        ensure(is_yamanouchi(&row_reading_rpp(&c.yamanouchi).0), || "non-Yamanouchi representative".into())?;
    }
    let e = expand_in_g(&shape, 3, Source::Dual).map_err(|e| e.to_string())?;
    let want = expansion(
        Basis::DualG,
        3,
        &[
            (&[], &[3, 1, 0], 1),
            (&[], &[3, 0, 0], -1),
            (&[], &[2, 2, 0], 1),
            (&[], &[2, 1, 0], -1),
            (&[1], &[3, 0, 0], 1),
        ],
    );
    ensure(e == want, || format!("got {e}"))?;
    let direct = Source::Dual.generating_function(&shape, 3).unwrap();
    ensure(want.to_poly() == direct, || "expected expansion differs from the RPP generating function".into())?;
    within(start, Duration::from_secs(1))
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let shape = skew(&[2, 2], &[1]);
    let e = expand_in_g(&shape, 2, Source::Grothendieck).map_err(|e| e.to_string())?;
    let want = expansion(
        Basis::DualG,
        2,
        &[(&[], &[2, 1], 1), (&[], &[2, 0], -1), (&[0, 1], &[2, 2], -1), (&[0, 1], &[2, 1], 1)],
    );
    ensure(e == want, || format!("got {e}"))?;
    let direct = Source::Grothendieck.generating_function(&shape, 2).unwrap();
    ensure(want.to_poly() == direct, || "g-side differs from RG".into())?;
    let cap = 6;
    let big = expand_in_G(&shape, 2, Source::Grothendieck, cap).map_err(|e| e.to_string())?;
    let mut g_side = Poly::zero();
    for (t, nu, c) in big.terms() {
        let tm = Poly::t_power(t.entries());
        g_side += &(&tm * &stable_G_n(&nu.dagger(), 2)).scale(c);
    }
    ensure(g_side.truncate_x_degree(cap as u32) == direct.truncate_x_degree(cap as u32), || {
        "G-side differs from RG through degree 6".into()
    })?;
    within(start, Duration::from_secs(5))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let a = vec![vec![1, 2, 0], vec![2, 1, 3]];
    let bw = biword_of_matrix(&a);
    ensure(bw.top() == [2, 2, 2, 2, 2, 2, 1, 1, 1] && bw.bottom() == [1, 1, 2, 3, 3, 3, 1, 2, 2], || {
        format!("biword {bw}")
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..500 {
        let rows = rng.random_range(1..=4);
        let cols = rng.random_range(1..=4);
        let m: Vec<Vec<u32>> = (0..rows).map(|_| (0..cols).map(|_| rng.random_range(0..=3)).collect()).collect();
        let bw = biword_of_matrix(&m);
        let (p, q) = burge(&bw);
        let back = burge_inverse(&p, &q).map_err(|e| e.to_string())?;
        ensure(back == bw, || format!("matrix {k}: biword round trip failed"))?;
        ensure(matrix_of_biword(&back, rows, cols) == m, || format!("matrix {k}: matrix round trip failed"))?;
    }
    within(start, Duration::from_secs(5))
}

fn criterion_5() -> Check {
    ensure(b_word(&comp(&[2, 3, 0, 1])) == [4, 2, 2, 2, 1, 1], || "b(2,3,0,1)".into())?;
    let w = word_set_w(&comp(&[1, 2, 0, 1]), &flag(&[1, 2, 3, 4])).map_err(|e| e.to_string())?;
    let expected = vec![vec![3, 1, 2, 1], vec![3, 2, 2, 1], vec![4, 2, 2, 1]];
    ensure(w == expected, || format!("enumerated {w:?}, expected {expected:?}"))
}

fn criterion_6() -> Check {
    let lambda = Partition::new(vec![2, 1, 0]).unwrap();
    let d = demazure_generate(&lambda, &[1, 2], 3).map_err(|e| e.to_string())?;
    ensure(d.elements.len() == 5, || format!("{} elements", d.elements.len()))?;
    let ch = setvalued::crystal::character(d.elements.iter(), 3);
    let by_ops = demazure_op(&demazure_op(&Poly::x_power(&[2, 1, 0]), 2).unwrap(), 1).unwrap();
    ensure(ch == by_ops, || format!("character {ch} vs T1 T2 x^(2,1,0) = {by_ops}"))?;
    ensure(by_ops == key_polynomial(&comp(&[0, 2, 1])), || "memoized κ_(0,2,1) disagrees".into())
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let theta = skew(&[4, 3, 3, 2], &[2, 2, 0, 0]);
    let tau = skew(&[4, 3, 3, 2], &[1, 0, 0, 0]);
    let aux = RecordingTableau::from_cells([((0, 1), 1), ((1, 0), 2), ((1, 1), 1)]);
    let t = svt(
        &[4, 3, 3, 2],
        &[1, 0, 0, 0],
        vec![
            vec![vec![1], vec![1, 2], vec![2]],
            vec![vec![2], vec![3], vec![4]],
            vec![vec![3, 5], vec![6], vec![6, 7]],
            vec![vec![8], vec![9]],
        ],
    );
    let rec = uncrowd(&theta, &tau, &aux, &t).map_err(|e| e.to_string())?;
    let want = svt(
        &[4, 3, 3, 2, 2, 2, 1, 1],
        &[2, 2, 0, 0, 0, 0, 0, 0],
        vec![
            vec![vec![1], vec![2]],
            vec![vec![4]],
            vec![vec![1], vec![2], vec![6]],
            vec![vec![2], vec![3]],
            vec![vec![3], vec![6]],
            vec![vec![5], vec![9]],
            vec![vec![7]],
            vec![vec![8]],
        ],
    );
    ensure(rec.straightened == want, || format!("T̃ = {}", rec.straightened))?;
    let q =
        RecordingTableau::from_cells([((4, 0), 3), ((5, 0), 3), ((6, 0), 2), ((7, 0), 1), ((4, 1), 1), ((5, 1), 1)]);
    ensure(rec.recording == q, || format!("T″ = {}", rec.recording))?;

    let t = svt(
        &[4, 3, 2],
        &[2, 1, 0],
        vec![vec![vec![1], vec![1, 2]], vec![vec![1, 2], vec![2, 3]], vec![vec![1], vec![3]]],
    );
    let rec = uncrowd(t.shape(), t.shape(), &RecordingTableau::new(), &t).map_err(|e| e.to_string())?;
    ensure(rec.output_shape == skew(&[4, 4, 3, 1], &[2, 1, 0, 0]), || format!("θ̃ = {}", rec.output_shape))?;
    let q = RecordingTableau::from_cells([((3, 0), 2), ((2, 2), 2), ((1, 3), 1)]);
    ensure(rec.recording == q, || format!("Q″ = {}", rec.recording))?;
    let want = svt(
        &[4, 4, 3, 1],
        &[2, 1, 0, 0],
        vec![vec![vec![1], vec![1]], vec![vec![1], vec![2], vec![2]], vec![vec![1], vec![2], vec![3]], vec![vec![3]]],
    );
    ensure(rec.straightened == want, || format!("T̃ = {}", rec.straightened))?;
    let trace = flag_trace(&rec, &flag(&[2, 3, 4])).map_err(|e| e.to_string())?;
    ensure(trace.last() == Some(&flag(&[2, 2, 3, 3])), || format!("flag trace {trace:?}"))?;

    let mut checked = 0usize;
    for shape in SkewShape::all_compact(8).into_iter().filter(SkewShape::is_connected) {
        let phi = Flag::full(3, shape.rows());
        let filter = SvtFilter { max_entries: Some(shape.size() + 3), ..SvtFilter::default() };
        let all = SvtEnumerator::new(&shape, &phi, filter).unwrap().collect();
        for t in all {
            let rec = uncrowd(&shape, &shape, &RecordingTableau::new(), &t).map_err(|e| e.to_string())?;
            let back = uncrowd_inverse(&shape, &rec.output_shape, &rec.recording, &rec.straightened)
                .map_err(|e| format!("{e} on {t}"))?;
            ensure(back == t, || format!("round trip failed on {t}"))?;
            checked += 1;
        }
    }
    println!("    uncrowding round trips checked: {checked}");
    within(start, Duration::from_secs(60))
}

fn criterion_8() -> Check {
    let start = Instant::now();
    let mut shapes = 0usize;
    let mut flagged = 0usize;
    for shape in SkewShape::all_up_to(7) {
        let table = PsiTable::build(&shape, 3).map_err(|e| e.to_string())?;
        shapes += 1;
        for n in 1..=3 {
            for phi in Flag::all(shape.rows(), n) {
                let c = table.classify(&phi, n).map_err(|e| format!("{shape} Φ={phi}: {e}"))?;
                let mut count = 0usize;
                SvtEnumerator::new(&shape, &phi, SvtFilter::default()).unwrap().for_each(|_| count += 1);
                let mut seen = HashSet::new();
                for class in &c.classes {
                    for m in &class.members {
                        ensure(seen.insert(m.clone()), || format!("{shape} Φ={phi}: classes overlap at {m}"))?;
                    }
                }
                ensure(seen.len() == count, || format!("{shape} Φ={phi}: classes cover {} of {count}", seen.len()))?;
                let mut sum = Poly::zero();
                for class in &c.classes {
                    let ex = &class.key.excess;
                    let s = if ex.size() % 2 == 0 { 1 } else { -1 };
                    sum += &(&Poly::t_power(ex.entries()) * &key_polynomial(&class.label)).scale(s);
                }
                ensure(sum == grothendieck_flagged(&shape, &phi).unwrap(), || {
                    format!("{shape} Φ={phi}: key expansion differs from enumeration")
                })?;
                flagged += 1;
            }
        }
    }
    println!("    shapes: {shapes}, (shape, flag) pairs: {flagged}");
    within(start, Duration::from_secs(600))
}

fn criterion_9() -> Check {
    let shape = skew(&[4, 3, 2], &[2, 1, 0]);
    let phi = flag(&[2, 3, 4]);
    let table = PsiTable::for_flag(&shape, &phi).map_err(|e| e.to_string())?;
    let c = table.classify(&phi, 4).map_err(|e| e.to_string())?;
    let t = svt(
        &[4, 3, 2],
        &[2, 1, 0],
        vec![vec![vec![1], vec![1, 2]], vec![vec![1, 2], vec![2, 3]], vec![vec![1], vec![3]]],
    );
    let groups = c.by_recording();
    let (_, classes) =
        groups.iter().find(|(_, cl)| cl.iter().any(|k| k.members.contains(&t))).ok_or("T not classified")?;
    let sum: Poly = classes.iter().map(|k| k.character(4)).sum();
    let want = &key_polynomial(&comp(&[3, 4, 2])) + &key_polynomial(&comp(&[3, 3, 3]));
    ensure(sum == want, || format!("class characters sum to {sum}"))?;
    let k = classes[0];
    let s = flagged_schur(&k.key.shape, &k.evolved_flag).unwrap();
    let rest = &s - &sum;
    ensure(!rest.is_zero(), || "s_θ̃(X_Φ̃) equals the class sum".into())?;
    let want = &key_polynomial(&comp(&[2, 4, 3])) + &key_polynomial(&comp(&[4, 4, 1]));
    ensure(rest == want, || format!("difference {rest}"))
}

fn criterion_10() -> Check {
    let start = Instant::now();
    let n = 3;
    let mut elements = 0usize;
    for shape in SkewShape::all_compact(6) {
        let phi = Flag::full(n, shape.rows());
        let all = SvtEnumerator::new(&shape, &phi, SvtFilter::default()).unwrap().collect();
        for t in &all {
            elements += 1;
            let wt = t.weight(n);
            for i in 1..n {
                let (eps, phi_i) = t.string_counts(i);
                ensure(phi_i as i64 - eps as i64 == wt.get(i - 1) as i64 - wt.get(i) as i64, || {
                    format!("axiom (2) fails for i={i} on {t}")
                })?;
                ensure(string_lengths(t, i) == (eps, phi_i), || format!("string lengths differ for i={i} on {t}"))?;
                let factors = rows_as_tensor(t);
                let via_tensor_f = tensor_lowering(&factors, i).map(|r| tensor_to_rows(&shape, &r));
                let via_tensor_e = tensor_raising(&factors, i).map(|r| tensor_to_rows(&shape, &r));
                ensure(via_tensor_f == t.lower(i), || format!("signature rule differs from f_{i} on {t}"))?;
                ensure(via_tensor_e == t.raise(i), || format!("signature rule differs from e_{i} on {t}"))?;
                if let OrZero::Elem(u) = t.lower(i) {
                    ensure(u.validate().is_ok(), || format!("f_{i} produced an invalid tableau from {t}"))?;
                    ensure(u.raise(i) == OrZero::Elem(t.clone()), || format!("axiom (1) fails for f_{i} on {t}"))?;
                    ensure(u.excess() == t.excess(), || format!("f_{i} changed the excess of {t}"))?;
                }
                if let OrZero::Elem(u) = t.raise(i) {
                    ensure(u.validate().is_ok(), || format!("e_{i} produced an invalid tableau from {t}"))?;
                    ensure(u.lower(i) == OrZero::Elem(t.clone()), || format!("axiom (1) fails for e_{i} on {t}"))?;
                    ensure(u.excess() == t.excess(), || format!("e_{i} changed the excess of {t}"))?;
                }
            }
        }
    }
    println!("    elements checked: {elements}");
    within(start, Duration::from_secs(60))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("worked key expansion with flag (1,3,3)", criterion_1),
        ("dual refined g expansion of (3,2,0)/(1,0,0)", criterion_2),
        ("refined G of (2,2)/(1) in the g and G bases", criterion_3),
        ("Burge example and 500 random round trips", criterion_4),
        ("W((1,2,0,1),(1,2,3,4)) and b(2,3,0,1)", criterion_5),
        ("Demazure crystal B_{s1s2}(2,1,0)", criterion_6),
        ("uncrowding examples and round trips", criterion_7),
        ("classification property suite", criterion_8),
        ("class characters versus flagged Schur", criterion_9),
        ("crystal axiom suite", criterion_10),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({secs:.2}s)", k + 1),
            Err(why) => {
                println!("criterion {}: FAIL  {name} ({secs:.2}s): {why}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
