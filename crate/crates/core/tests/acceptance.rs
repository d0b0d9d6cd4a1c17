//! One test per acceptance criterion. Each prints a `criterion N: PASS`
//! line on success; run with `--nocapture` to see them.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use sp6euler::chartab::{induce, inner_product, restrict, CharacterTable, IrrepLabel};
use sp6euler::f2sym::{conjugacy_classes, enumerate_group, Decoration, SubgroupEmbedding};
use sp6euler::kunneth::wreath_trace;
use sp6euler::pipeline::Pipeline;
use sp6euler::pointcount::{brute_force_twisted_count, purity_traces, twisted_count, CycleType};
use sp6euler::poly::{IntPolynomial, Var};
use sp6euler::strata::{
    load_reference_euler, load_stratum_table, load_wreath_poincare, reproduce_wreath_rows, Stratum,
    SymmetricTable,
};
use sp6euler::symmetric::partitions;

fn pipeline() -> &'static Pipeline {
    static P: OnceLock<Pipeline> = OnceLock::new();
    P.get_or_init(|| {
        let p = Pipeline::new(None);
        p.relabel().expect("relabel search runs");
        p
    })
}

fn label(s: &str) -> IrrepLabel {
    s.parse().unwrap()
}

fn v(s: &str) -> IntPolynomial {
    s.parse::<IntPolynomial>().unwrap().with_var(Var::V)
}

fn pass(n: u8, what: &str) {
    println!("criterion {n}: PASS  {what}");
}

#[test]
fn criterion_1_group_enumeration() {
    // |Sp(2g,2)| = 2^{g²} ∏ (4^i − 1), worked out by hand
    let expected = [(1usize, 6usize, 3usize), (2, 720, 11), (3, 1_451_520, 30)];
    for (genus, order, classes) in expected {
        let formula: usize = (1..=genus).map(|i| 4usize.pow(i as u32) - 1).product::<usize>() << (genus * genus);
        assert_eq!(formula, order);
        let start = Instant::now();
        let g = enumerate_group(genus).unwrap();
        let c = conjugacy_classes(&g);
        assert!(start.elapsed() < Duration::from_secs(300));
        assert_eq!(g.order(), order, "genus {genus}");
        assert_eq!(c.class_count(), classes, "genus {genus}");
        assert_eq!(c.class_sizes().iter().sum::<u64>(), order as u64);
    }
    pass(1, "orders 6, 720, 1451520 with 3, 11, 30 classes");
}

/// Row and column orthogonality written out directly.
fn assert_orthogonal(t: &CharacterTable) {
    let g = t.group();
    let r = g.class_count();
    let order = g.order as i128;
    let chi = |i: usize, c: usize| t.irreducibles()[i].value(c) as i128;
    for i in 0..r {
        for j in 0..r {
            let s: i128 = (0..r).map(|c| g.sizes[c] as i128 * chi(i, c) * chi(j, g.inverse[c])).sum();
            assert_eq!(s, if i == j { order } else { 0 }, "rows {i} {j}");
        }
    }
    for c in 0..r {
        for d in 0..r {
            let s: i128 = (0..r).map(|i| chi(i, c) * chi(i, g.inverse[d])).sum();
            let want = if c == d { order / g.sizes[c] as i128 } else { 0 };
            assert_eq!(s, want, "columns {c} {d}");
        }
    }
}

#[test]
fn criterion_2_character_table() {
    let start = Instant::now();
    let t = pipeline().table().unwrap();
    assert!(start.elapsed() < Duration::from_secs(900));
    assert_orthogonal(t);
    assert_eq!(t.degrees().iter().map(|d| d * d).sum::<u64>(), 1_451_520);
    let mut degrees = t.degrees();
    degrees.sort_unstable();
    let headers = [
        1, 7, 15, 21, 21, 27, 35, 35, 56, 70, 84, 105, 105, 105, 120, 168, 189, 189, 189, 210, 210, 216,
        280, 280, 315, 336, 378, 405, 420, 512,
    ];
    assert_eq!(degrees, headers);
    pass(2, "orthogonality exact; degrees match the 30 column headers");
}

const COUNTS: &[(usize, &str, &str)] = &[
    (4, "id", "q - 2"),
    (4, "(12)", "q"),
    (4, "(123)", "q + 1"),
    (6, "id", "q^3 - 9q^2 + 26q - 24"),
    (6, "(12)", "q^3 - 3q^2 + 2q"),
    (6, "(12)(34)", "q^3 - q^2 - 2q"),
    (6, "(12)(34)(56)", "q^3 - 3q^2 - 2q + 8"),
    (6, "(123)", "q^3 - q"),
    (6, "(123)(45)", "q^3 - q"),
    (6, "(123)(456)", "q^3 - q - 3"),
    (6, "(1234)", "q^3 + q^2"),
    (6, "(1234)(56)", "q^3 - q^2"),
    (6, "(12345)", "q^3 + q^2 + q + 1"),
    (6, "(123456)", "q^3 + q - 1"),
];

#[test]
fn criterion_3_twisted_point_counts() {
    for &(n, sigma, count) in COUNTS {
        let ct = CycleType::parse(n, sigma).unwrap();
        assert_eq!(twisted_count(n, &ct).unwrap(), count.parse().unwrap(), "{n} {sigma}");
    }
    for n in [4usize, 6] {
        let qs: &[u32] = if n == 4 { &[2, 3, 4, 5] } else { &[2, 3] };
        for parts in partitions(n) {
            let ct = CycleType::new(parts).unwrap();
            let closed = twisted_count(n, &ct).unwrap();
            for &q in qs {
                let start = Instant::now();
                let brute = brute_force_twisted_count(&ct.representative(), q).unwrap();
                assert!(start.elapsed() < Duration::from_secs(60), "{ct} q={q} too slow");
                assert_eq!(brute as i128, closed.eval(q as i64), "{ct} q={q}");
            }
        }
    }
    pass(3, "14 closed forms exact; enumeration agrees for every cycle type");
}

#[test]
fn criterion_4_purity_traces() {
    let four = purity_traces(4).unwrap();
    let row = |d| -> Vec<i64> {
        ["id", "(12)", "(123)"].iter().map(|s| four.trace(&CycleType::parse(4, s).unwrap(), d).unwrap()).collect()
    };
    assert_eq!(row(0), [1, 1, 1]);
    assert_eq!(row(1), [2, 0, -1]);

    let six = purity_traces(6).unwrap();
    assert_eq!(six.betti(), [1, 9, 26, 24]);
    for &(n, sigma, count) in COUNTS.iter().filter(|c| c.0 == 6) {
        let p: IntPolynomial = count.parse().unwrap();
        let ct = CycleType::parse(n, sigma).unwrap();
        for i in 0..=3 {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            assert_eq!(six.trace(&ct, i), Some(sign * p.coeff(3 - i)), "{sigma} H{i}");
        }
    }
    for (n, traces) in [(4usize, &four), (6, &six)] {
        let table = SymmetricTable::new(n);
        for d in 0..=traces.top_degree() {
            let f: Vec<i64> = table
                .partitions
                .iter()
                .map(|mu| traces.trace(&CycleType::new(mu.clone()).unwrap(), d).unwrap())
                .collect();
            for m in table.decompose(&f) {
                assert!(m.is_integer() && m >= 0.into(), "n={n} H{d}: {m}");
            }
        }
    }
    pass(4, "traces and Betti numbers as read off; decompositions non-negative");
}

#[test]
fn criterion_5_wreath_poincare_polynomials() {
    let p = pipeline();
    let rows = load_wreath_poincare().unwrap();
    assert_eq!(rows.len(), 22);
    let checks = reproduce_wreath_rows(&rows, p.sp2().unwrap(), p.wreath().unwrap()).unwrap();
    for c in &checks {
        assert!(c.agrees(), "{}: {} vs {}", c.row.label(), c.computed, c.row.poincare);
    }
    let mut classes: Vec<usize> = checks.iter().map(|c| c.class).collect();
    classes.sort_unstable();
    classes.dedup();
    assert_eq!(classes.len(), 22, "rows cover every wreath class once");
    pass(5, "all 22 polynomials exact");
}

#[test]
fn criterion_6_induced_tables() {
    let p = pipeline();
    let r = p.relabel().unwrap();
    assert!(r.succeeded(), "no consistent bijection; closest differs in {:?}", r.best_diffs);
    println!("consistent bijections: {} of {}", r.valid.len(), r.examined);
    let order = load_stratum_table(Stratum::Quartic).unwrap().labels().to_vec();
    let map = &r.valid[0];
    let a21 = p.a21().unwrap().relabeled(map, &order).unwrap();
    let a111 = p.a111().unwrap().relabeled(map, &order).unwrap();
    assert_eq!(a21.rows(), load_stratum_table(Stratum::SurfaceElliptic).unwrap().rows());
    assert_eq!(a111.rows(), load_stratum_table(Stratum::TripleElliptic).unwrap().rows());

    let support = |t: &sp6euler::strata::CohomologyTable, d| -> Vec<String> {
        t.row_support(d).iter().map(|l| l.to_string()).collect()
    };
    assert_eq!(support(&a21, 0), ["1a", "27a", "35b", "105b", "168a"]);
    assert_eq!(a21.multiplicity(4, &label("70a")), Some(1));
    assert_eq!(support(&a111, 0), ["1a", "27a", "35b", "84a", "105b", "168a", "280b", "420a"]);
    assert_eq!(a111.multiplicity(3, &label("405a")), Some(4));
    // the one 105 in H0 must be the one called 105b
    assert_eq!(a21.multiplicity(0, &label("105b")), Some(1));

    let dim0 = |t: &sp6euler::strata::CohomologyTable| -> u64 {
        t.labels().iter().zip(&t.rows()[0]).map(|(l, m)| l.dimension * m).sum()
    };
    assert_eq!(dim0(&a21), 336);
    assert_eq!(dim0(&a111), 1120);
    pass(6, "both tables exact under one global relabeling; H0 dimensions 336 and 1120");
}

#[test]
fn criterion_7_total_euler_characteristic() {
    let p = pipeline();
    let r = p.relabel().unwrap();
    assert!(r.succeeded());
    let order = load_stratum_table(Stratum::Quartic).unwrap().labels().to_vec();
    let map = &r.valid[0];
    let tables = [
        load_stratum_table(Stratum::Quartic).unwrap(),
        load_stratum_table(Stratum::Hyperelliptic).unwrap(),
        p.a21().unwrap().relabeled(map, &order).unwrap(),
        p.a111().unwrap().relabeled(map, &order).unwrap(),
    ];
    // e = Σ_strata v^{2·codim} Σ_i (−1)^i H^i v^{2i}, assembled here by hand
    let mut total: BTreeMap<IrrepLabel, Vec<i64>> = order.iter().map(|l| (*l, vec![0; 13])).collect();
    for (codim, t) in tables.iter().enumerate() {
        for (i, row) in t.rows().iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for (l, &m) in t.labels().iter().zip(row) {
                total.get_mut(l).unwrap()[2 * codim + 2 * i] += sign * m as i64;
            }
        }
    }
    let stored = load_reference_euler().unwrap();
    for (l, coeffs) in &total {
        let ours = IntPolynomial::new(Var::V, coeffs.clone());
        assert_eq!(Some(&ours), stored.component(l), "{l}");
    }
    assert_eq!(r.assembled.component(&label("1a")), Some(&v("1 + v^2 + v^4 + v^6 + v^12")));
    assert_eq!(r.assembled.component(&label("27a")), Some(&v("-v^6 - v^8")));
    assert_eq!(r.assembled.component(&label("512a")), Some(&v("-v^12")));
    for zero in ["7a", "21a", "21b"] {
        assert!(r.assembled.component(&label(zero)).unwrap().is_zero(), "{zero}");
    }
    let nonzero = total.values().filter(|c| c.iter().any(|&x| x != 0)).count();
    assert_eq!(nonzero, 13);
    assert!(total.values().flatten().all(|x| (-1..=1).contains(x)));
    pass(7, "total matches under the same relabeling; 13 irreducibles, coefficients in {-1,0,1}");
}

#[test]
fn criterion_8_genus_two_formula() {
    let e = pipeline().a2_euler().unwrap();
    let expected: BTreeMap<Vec<usize>, IntPolynomial> = [
        (vec![6], v("1 + v^2")),
        (vec![5, 1], v("-v^4")),
        (vec![4, 2], v("-v^4")),
        (vec![3, 2, 1], v("v^6")),
    ]
    .into_iter()
    .collect();
    for (lambda, poly) in e.partitions.iter().zip(&e.polys) {
        let want = expected.get(lambda).cloned().unwrap_or_else(|| IntPolynomial::zero(Var::V));
        assert_eq!(poly, &want, "{lambda:?}");
    }
    assert_eq!(e.partitions.len(), 11);
    pass(8, "(1+v^2)s6 - v^4(s5,1 + s4,2) + v^6 s3,2,1");
}

fn frobenius(emb: &SubgroupEmbedding, table: &CharacterTable) -> usize {
    let sub = sp6euler::chartab::dixon_schneider(emb.subgroup(), emb.classes()).unwrap();
    assert_orthogonal(&sub);
    let mut pairs = 0;
    for psi in sub.irreducibles() {
        let ind = induce(emb, psi, table.group()).unwrap();
        for chi in table.irreducibles() {
            let res = restrict(emb, chi).unwrap();
            assert_eq!(inner_product(&ind, chi).unwrap(), inner_product(psi, &res).unwrap());
            pairs += 1;
        }
    }
    pairs
}

fn cauchy(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[test]
fn criterion_9_structural_properties() {
    let p = pipeline();
    let table = p.table().unwrap();
    assert_orthogonal(table);
    let product = frobenius(p.product().unwrap(), table);
    let wreath = frobenius(p.wreath().unwrap(), table);
    assert_eq!((product, wreath), (33 * 30, 22 * 30));

    // every member of a wreath class has the same graded trace
    let sp2 = p.sp2().unwrap();
    let base = sp2.transport(&purity_traces(4).unwrap()).unwrap();
    let emb = p.wreath().unwrap();
    let mut seen: BTreeMap<usize, IntPolynomial> = BTreeMap::new();
    for e in 0..emb.order() {
        let Decoration::Wreath { top, base: elems } = emb.decoration(e) else { panic!("not a wreath element") };
        let t = wreath_trace(&base, sp2, top, elems).unwrap();
        let prev = seen.entry(emb.classes().class_of(e)).or_insert_with(|| t.clone());
        assert_eq!(*prev, t, "element {e}");
    }
    assert_eq!(emb.order(), 1296);

    let b4 = [1, 2];
    let b6 = [1, 9, 26, 24];
    let dims = |t: &sp6euler::strata::CohomologyTable| -> Vec<i64> {
        t.rows().iter().map(|r| t.labels().iter().zip(r).map(|(l, m)| (l.dimension * m) as i64).sum()).collect()
    };
    let scale = |v: Vec<i64>, k| v.into_iter().map(|x| x * k).collect::<Vec<_>>();
    assert_eq!(dims(p.a21().unwrap()), scale(cauchy(&b6, &b4), 336));
    assert_eq!(dims(p.a21().unwrap()), [336, 3696, 14784, 25536, 16128]);
    assert_eq!(dims(p.a111().unwrap()), scale(cauchy(&cauchy(&b4, &b4), &b4), 1120));
    assert_eq!(dims(p.a111().unwrap()), [1120, 6720, 13440, 8960]);
    pass(9, "orthogonality, reciprocity, wreath constancy and dimension checks");
}
