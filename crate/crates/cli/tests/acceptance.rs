//! One line per acceptance criterion. Criteria listed in EXPECTED_RED are
//! printed as FAIL and required to stay failing; everything else must pass.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use bigres::betti::{
    betti_table, first_betti_h1, mcomplex_sums, degree3_syzygies_with_report, verify_resolution, BettiTable,
    Convention, DEFAULT_SIGNS,
};
use bigres::bipoly::BinaryForm;
use bigres::combinat::{chi, neg_part, nd, Grid};
use bigres::lab::{sample_system, ExperimentConfig};
use bigres::segre::{
    basepoint_free, classification_box, conic_resolution, detect_conic, pencil_expected_degrees,
    psi_image, quartic_q, three_point_resolution, FactorizedBasis,
};
use bigres::strands::{default_box, h1_dim, h1_grid, hf_grid, is_generic, koszul_strand_homology, phi_matrices, Genericity};
use bigres::{bd, BiDegree, BiPoly, Field, FieldSpec, Gf, Rational, SystemF};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EXPECTED_RED: &[&str] = &["7e-literal"];

struct Outcome {
    id: &'static str,
    title: &'static str,
    ok: bool,
    detail: String,
    elapsed: Duration,
    budget: Duration,
}

fn run(id: &'static str, title: &'static str, budget_s: u64, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let t = Instant::now();
    let (ok, detail) = f();
    let elapsed = t.elapsed();
    let budget = Duration::from_secs(budget_s);
    Outcome {
        id,
        title,
        ok: ok && elapsed <= budget,
        detail,
        elapsed,
        budget,
    }
}

fn cfg(d: BiDegree, seed: u64) -> ExperimentConfig {
    ExperimentConfig::new(d, 1, FieldSpec::PrimeField(32003), seed)
}

fn sample(d: BiDegree, seed: u64, trial: usize) -> SystemF<Gf> {
    sample_system::<Gf>(&cfg(d, seed), trial).unwrap().0
}

fn generic(d: BiDegree, seed: u64, count: usize) -> Vec<SystemF<Gf>> {
    (0..)
        .map(|t| sample(d, seed, t))
        .filter(|s| is_generic(s, default_box(d).max_with(bd(3 * d.a1 + 1, 3 * d.a2 + 1))).unwrap() == Genericity::GenericOnBox)
        .take(count)
        .collect()
}

trait MaxWith {
    fn max_with(self, o: BiDegree) -> BiDegree;
}

impl MaxWith for BiDegree {
    fn max_with(self, o: BiDegree) -> BiDegree {
        bd(self.a1.max(o.a1), self.a2.max(o.a2))
    }
}

fn table(rows: &[(usize, (i64, i64), usize)]) -> BettiTable {
    let mut t = BettiTable::new(Convention::Ideal);
    for &(i, (a, b), m) in rows {
        t.add(i, bd(a, b), m);
    }
    t
}

fn same(a: &BettiTable, b: &BettiTable) -> bool {
    a.entries().collect::<Vec<_>>() == b.entries().collect::<Vec<_>>()
}

fn degmap(v: &[((i64, i64), usize)]) -> BTreeMap<BiDegree, usize> {
    v.iter().map(|&((a, b), m)| (bd(a, b), m)).collect()
}

fn multiset(m: &BTreeMap<BiDegree, usize>) -> Vec<BiDegree> {
    m.iter().flat_map(|(&a, &k)| std::iter::repeat(a).take(k)).collect()
}

fn rand_form(n: usize, rng: &mut ChaCha8Rng) -> BinaryForm<Gf> {
    BinaryForm::new((0..=n).map(|_| Gf::sample(rng, 0)).collect())
}

fn minors(b: &[BinaryForm<Gf>], c: &[BinaryForm<Gf>]) -> [BinaryForm<Gf>; 3] {
    [
        &(&b[1] * &c[2]) - &(&c[1] * &b[2]),
        &(&c[0] * &b[2]) - &(&b[0] * &c[2]),
        &(&b[0] * &c[1]) - &(&c[0] * &b[1]),
    ]
}

fn lin(a: i64, b: i64) -> BiPoly<Gf> {
    &BiPoly::monomial(Gf::from_i64(a), [1, 0, 0, 0]) + &BiPoly::monomial(Gf::from_i64(b), [0, 1, 0, 0])
}

fn mono<F: Field>(c: i64, e: [u32; 4]) -> BiPoly<F> {
    BiPoly::monomial(F::from_i64(c), e)
}

fn c1() -> (bool, String) {
    let want = table(&[
        (0, (1, 1), 3),
        (1, (1, 3), 1),
        (1, (2, 2), 3),
        (1, (3, 1), 1),
        (2, (2, 3), 2),
        (2, (3, 2), 2),
        (3, (3, 3), 1),
    ]);
    let bad: Vec<usize> = (0..20)
        .filter(|&t| !same(&betti_table(&sample(bd(1, 1), 1, t), bd(4, 4), Convention::Ideal), &want))
        .collect();
    (bad.is_empty(), format!("20 systems, mismatching trials {bad:?}"))
}

fn c2() -> (bool, String) {
    let a0 = &mono::<Gf>(1, [0, 0, 2, 0]) + &mono(3, [0, 0, 0, 2]);
    let a1 = &mono::<Gf>(1, [0, 0, 1, 1]) + &mono(-1, [0, 0, 0, 2]);
    let (s, t) = (mono::<Gf>(1, [1, 0, 0, 0]), mono::<Gf>(1, [0, 1, 0, 0]));
    let base = SystemF::new([&t * &a0, &(&s * &a0) + &(&t * &a1), &s * &a1]).unwrap();
    let c = bigres::Matrix::<Gf>::from_i64(&[&[2, 1, 0], &[0, 1, 5], &[1, 0, 1]]);
    let sys = base.transform(&c).unwrap();
    let detected = detect_conic(&sys).unwrap().is_some();
    let t = betti_table(&sys, bd(4, 7), Convention::Ideal);
    let want = table(&[
        (0, (1, 2), 3),
        (1, (1, 6), 1),
        (1, (2, 4), 3),
        (1, (3, 2), 1),
        (2, (2, 6), 2),
        (2, (3, 4), 2),
        (3, (3, 6), 1),
    ]);
    let b124 = t.get(1, bd(2, 4));
    let b234 = t.get(2, bd(3, 4));
    (
        detected && same(&t, &want) && b124 == 3 && b234 == 2,
        format!("detected={detected} beta1(2,4)={b124} beta2(3,4)={b234}"),
    )
}

fn c3(per_system: &mut Vec<Duration>) -> (bool, String) {
    let want = degmap(&[((3, 10), 1), ((3, 11), 4), ((4, 10), 3), ((6, 9), 2), ((1, 18), 1)]);
    let d = bd(1, 6);
    let mut fails = Vec::new();
    let mut sums = Vec::new();
    for (k, sys) in generic(d, 3, 10).iter().enumerate() {
        let t = Instant::now();
        let h1_route = first_betti_h1(sys, bd(8, 24));
        let tor_route = betti_table(sys, bd(7, 19), Convention::Ideal).non_koszul_first(d);
        let g = mcomplex_sums(sys, bd(12, 24));
        let total = |j: usize| g[j].points().into_iter().map(|a| g[j].get(a)).sum::<usize>();
        let (m1, m2) = (total(1), total(2));
        let nb: usize = h1_route.values().sum();
        if h1_route != want || tor_route != want || m1 != 18 || m2 != 7 || m1 - m2 != nb {
            fails.push(k);
        }
        sums.push((m1, m2));
        per_system.push(t.elapsed());
    }
    let slowest = per_system.iter().max().copied().unwrap_or_default();
    (
        fails.is_empty() && slowest < Duration::from_secs(60),
        format!(
            "10 generic systems, both routes, M sums {:?}, failing {fails:?}, slowest {:.2}s",
            sums[0],
            slowest.as_secs_f64()
        ),
    )
}

fn c4() -> (bool, String) {
    let golden = include_str!("golden/nd_1_6.txt");
    let t = Instant::now();
    let o = Command::new(env!("CARGO_BIN_EXE_bigres"))
        .args(["nd", "--d", "1,6", "--box", "10,20"])
        .output()
        .unwrap();
    let el = t.elapsed();
    let ok = o.status.success() && o.stdout == golden.as_bytes() && el < Duration::from_secs(1);
    (ok, format!("{} lines, {:.3}s", golden.lines().count(), el.as_secs_f64()))
}

fn c5() -> (bool, String) {
    let n = 6;
    let f2 = &(&(&mono::<Rational>(1, [1, 0, n, 0]) + &mono(1, [1, 0, 0, n])) + &mono(1, [0, 1, n, 0])) + &mono(1, [0, 1, 0, n]);
    let sys = SystemF::new([mono(1, [1, 0, n, 0]), mono(1, [0, 1, 0, n]), f2]).unwrap();
    let (p1, _) = phi_matrices(&sys, bd(3, 6));
    let m = &p1.matrix;
    let zero_cols: Vec<usize> = (0..m.cols()).filter(|&j| m.column(j).iter().all(|x| x.is_zero())).collect();
    // rows up to regrouping: e_j, e_(6+j) once, e_j + e_(6+j) twice, ten zero rows
    let mut rows: Vec<Vec<usize>> = (0..m.rows())
        .map(|i| (0..m.cols()).filter(|&j| !m[(i, j)].is_zero()).collect())
        .collect();
    let ones = (0..m.rows()).all(|i| (0..m.cols()).all(|j| m[(i, j)].is_zero() || m[(i, j)] == Rational::from_integer(1.into())));
    rows.sort();
    let mut want: Vec<Vec<usize>> = vec![vec![]; 10];
    for j in 0..5 {
        want.push(vec![j]);
        want.push(vec![6 + j]);
        want.push(vec![j, 6 + j]);
        want.push(vec![j, 6 + j]);
    }
    want.sort();
    let h1 = h1_dim(&sys, bd(3, 6));
    let sys_gf: SystemF<Gf> = {
        let f2 = &(&(&mono::<Gf>(1, [1, 0, n, 0]) + &mono(1, [1, 0, 0, n])) + &mono(1, [0, 1, n, 0])) + &mono(1, [0, 1, 0, n]);
        SystemF::new([mono(1, [1, 0, n, 0]), mono(1, [0, 1, 0, n]), f2]).unwrap()
    };
    let gen = is_generic(&sys_gf, default_box(sys_gf.d())).unwrap();
    let ok = (m.rows(), m.cols()) == (30, 11)
        && zero_cols == [5]
        && ones
        && rows == want
        && h1 == 1
        && gen == Genericity::NotGeneric(bd(3, 6));
    (ok, format!("phi1 30x11, zero columns {zero_cols:?}, block rows match {}, h1 {h1}, {gen:?}", rows == want))
}

fn c6(per_system: &mut Vec<Duration>) -> (bool, String) {
    let degs = [
        (7, 67), (6, 68), (9, 66), (8, 67), (7, 68), (6, 69), (5, 70), (10, 66),
        (4, 72), (12, 65), (3, 75), (3, 76), (17, 64), (18, 64), (33, 63), (1, 126),
    ];
    let mult = [2, 3, 5, 8, 5, 8, 9, 3, 7, 6, 2, 3, 3, 1, 2, 1];
    let want: BTreeMap<BiDegree, usize> = degs.iter().zip(mult).map(|(&(a, b), m)| (bd(a, b), m)).collect();
    let d = bd(1, 42);
    let mut fails = Vec::new();
    for (k, sys) in generic(d, 42, 2).iter().enumerate() {
        let t = Instant::now();
        let got = first_betti_h1(sys, classification_box(d));
        per_system.push(t.elapsed());
        if got != want {
            fails.push((k, got));
        }
    }
    let slowest = per_system.iter().max().copied().unwrap_or_default();
    (
        fails.is_empty() && slowest < Duration::from_secs(1800),
        format!(
            "2 generic systems on box {}, full box (no restriction), slowest {:.1}s, failing {:?}",
            classification_box(d),
            slowest.as_secs_f64(),
            fails.iter().map(|f| f.0).collect::<Vec<_>>()
        ),
    )
}

struct PropertyCounts {
    systems: usize,
    a: usize,
    b: usize,
    c: usize,
    d: usize,
    literal: usize,
    literal_points: usize,
    h0: usize,
    h34: usize,
    sums: usize,
}

fn property_suite() -> PropertyCounts {
    let ds = [bd(1, 1), bd(1, 2), bd(1, 3), bd(1, 5), bd(2, 2)];
    let mut pc = PropertyCounts {
        systems: 0,
        a: 0,
        b: 0,
        c: 0,
        d: 0,
        literal: 0,
        literal_points: 0,
        h0: 0,
        h34: 0,
        sums: 0,
    };
    for (k, &d) in ds.iter().enumerate() {
        for trial in 0..40 {
            let sys = sample(d, 700 + k as u64, trial);
            pc.systems += 1;
            let bx = bd(3 * d.a1 + 3, 3 * d.a2 + 3);
            let h1 = h1_grid(&sys, bx);
            let hf = hf_grid(&sys, bx);
            for a in bx.box_points() {
                if hf.get(a) as i64 - h1.get(a) as i64 != chi(d, a) {
                    pc.a += 1;
                }
                if (h1.get(a) as i64) < nd(d, a) {
                    pc.b += 1;
                }
            }
            // Koszul vanishing is checked on every fifth system to bound the runtime
            if trial % 5 == 0 {
                for a in bx.box_points() {
                    if koszul_strand_homology(&sys, a, 2) != 0 || koszul_strand_homology(&sys, a, 3) != 0 {
                        pc.c += 1;
                    }
                }
            }
            let tor = betti_table(&sys, bx, Convention::Ideal);
            let nk = tor.non_koszul_first(d);
            let big = bd(6 * d.a1 + 4, 6 * d.a2 + 4);
            let m = mcomplex_sums(&sys, big);
            let mut literal_bad = false;
            for a in bx.box_points() {
                let hm1 = m[1].get(a) as i64;
                let hm2 = m[2].get(a) as i64;
                if tor.get(1, a) as i64 != hm1 - hm2 {
                    literal_bad = true;
                    pc.literal_points += 1;
                }
                if nk.get(&a).copied().unwrap_or(0) != m[0].get(a) {
                    pc.h0 += 1;
                }
            }
            if literal_bad {
                pc.literal += 1;
            }
            if big.box_points().into_iter().any(|a| m[3].get(a) != 0 || m[4].get(a) != 0) {
                pc.h34 += 1;
            }
            let total = |g: &Grid<usize>| g.points().into_iter().map(|a| g.get(a) as i64).sum::<i64>();
            let nk_total: i64 = first_betti_h1(&sys, big).values().map(|&v| v as i64).sum();
            if total(&m[1]) - total(&m[2]) != nk_total {
                pc.sums += 1;
            }
        }
    }
    for d in [bd(1, 1), bd(1, 3), bd(1, 6), bd(2, 2), bd(2, 5), bd(3, 4)] {
        for a in bd(59, 59).box_points() {
            if nd(d, a) != neg_part(chi(d, a)) {
                pc.d += 1;
            }
        }
    }
    pc
}

fn c8() -> (bool, String) {
    let mut fails = Vec::new();
    let mut searched = 0;
    for k in 0..20usize {
        let n = [5i64, 6, 7][k % 3];
        let sys = sample(bd(1, n), 800, k);
        let r = match degree3_syzygies_with_report(&sys) {
            Ok(r) => r,
            Err(e) => {
                fails.push(format!("{k}: {e}"));
                continue;
            }
        };
        if r.signs != DEFAULT_SIGNS {
            searched += 1;
        }
        let b: Vec<i64> = r.hb.column_degrees.iter().map(|&x| x as i64).collect();
        let degs_ok = r.degrees.iter().zip(&b).all(|(a, bk)| *a == bd(3, 2 * n - bk));
        let verified = r.syzygies.len() == 5 && r.syzygies.iter().all(|s| s.verify(&sys));
        if !(verified && degs_ok && b.iter().sum::<i64>() == n && r.mk_zero && r.strand_check) {
            fails.push(format!("{k}"));
        }
    }
    (
        fails.is_empty(),
        format!("20 systems n in 5..7, sign search needed {searched} times, failing {fails:?}"),
    )
}

fn c9() -> (bool, String) {
    let mut fails = Vec::new();
    let mut count = 0;
    for n in 1..=8usize {
        let mut r = ChaCha8Rng::seed_from_u64(900 + n as u64);
        let a0 = rand_form(n, &mut r).to_bipoly();
        let a1 = rand_form(n, &mut r).to_bipoly();
        let (s, t) = (mono::<Gf>(1, [1, 0, 0, 0]), mono::<Gf>(1, [0, 1, 0, 0]));
        let sys = SystemF::new([&t * &a0, &(&s * &a0) + &(&t * &a1), &s * &a1]).unwrap();
        let ok = conic_resolution(&sys).is_ok_and(|rc| verify_resolution(&rc, bd(5, 3 * n as i64 + 2)).passed());
        count += 1;
        if !ok {
            fails.push(format!("conic n={n}"));
        }
    }
    for n in 3..=6usize {
        for mu in 1..=n / 2 {
            let mut r = ChaCha8Rng::seed_from_u64(950 + 10 * n as u64 + mu as u64);
            let b: Vec<_> = (0..3).map(|_| rand_form(mu, &mut r)).collect();
            let c: Vec<_> = (0..3).map(|_| rand_form(n - mu, &mut r)).collect();
            let fb = FactorizedBasis::new([lin(1, 0), lin(0, 1), lin(2, -3)], minors(&b, &c)).unwrap();
            let ok = three_point_resolution(&fb).is_ok_and(|tp| {
                tp.mu == mu && verify_resolution(&tp.complex, bd(5, 3 * n as i64 + 2)).passed()
            });
            count += 1;
            if !ok {
                fails.push(format!("three point n={n} mu={mu}"));
            }
        }
    }
    (fails.is_empty(), format!("{count} complexes verified, failing {fails:?}"))
}

fn pencil(n: i64, seed: u64) -> FactorizedBasis<Gf> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let g = [0, 1, 2].map(|_| BiPoly::from_coeffs(bd(1, 1), (0..4).map(|_| Gf::sample(&mut r, 0)).collect()).unwrap());
    let h0 = rand_form(n as usize - 1, &mut r);
    let h1 = rand_form(n as usize - 1, &mut r);
    let h2 = &h0.scale(&Gf::from_i64(2)) + &h1.scale(&Gf::from_i64(7));
    FactorizedBasis::new(g, [h0, h1, h2]).unwrap()
}

fn c10(warnings: &mut Vec<String>) -> (bool, String) {
    let mut fails = Vec::new();
    for n in [4i64, 5] {
        let fb = pencil(n, 1000 + n as u64);
        let sys = fb.system().unwrap();
        if !basepoint_free(&sys).is_free() {
            fails.push(format!("n={n}: basepoint"));
            continue;
        }
        let t = betti_table(&sys, bd(7, 3 * n + 1), Convention::Ideal);
        let got = multiset(&t.row(1));
        if got != pencil_expected_degrees(n) {
            fails.push(format!("n={n}: {got:?}"));
        }
        let conj2 = degmap(&[((2, 3 * n), 2), ((3, 2 * n), 4), ((6, 2 * n - 1), 2)]);
        let conj3 = degmap(&[((3, 3 * n), 1), ((6, 2 * n), 1)]);
        if t.row(2) != conj2 || t.row(3) != conj3 || t.max_index() != Some(3) {
            warnings.push(format!(
                "deviation from the conjectured table at n={n}: beta2 {:?}, beta3 {:?}",
                t.row(2),
                t.row(3)
            ));
        }
    }
    (fails.is_empty(), format!("n in {{4,5}}, failing {fails:?}"))
}

fn c11() -> (bool, String) {
    let mut r = ChaCha8Rng::seed_from_u64(11);
    let bad = (0..200)
        .filter(|_| {
            let a: Vec<Gf> = (0..4).map(|_| Gf::sample(&mut r, 0)).collect();
            let b: Vec<Gf> = (0..2).map(|_| Gf::sample(&mut r, 0)).collect();
            !quartic_q(&psi_image(1, 2, &a, &b).unwrap()).is_zero()
        })
        .count();
    (bad == 0, format!("200 points, {bad} off the quartic"))
}

#[test]
fn acceptance() {
    let mut out = Vec::new();
    out.push(run("1", "d=(1,1) Betti table", 5, c1));
    out.push(run("2", "d=(1,2) conic Betti table", 5, c2));
    let mut t3 = Vec::new();
    out.push(run("3", "d=(1,6) generic beta1 and M sums", 600, || c3(&mut t3)));
    out.push(run("4", "nd grid CLI golden", 5, c4));
    out.push(run("5", "fixture su^6, tv^6, (s+t)(u^6+v^6)", 2, c5));
    let mut t6 = Vec::new();
    out.push(run("6", "d=(1,42) generic beta1", 3600, || c6(&mut t6)));
    let t = Instant::now();
    let pc = property_suite();
    let el = t.elapsed();
    let prop = |id, title, bad: usize, what: String| Outcome {
        id,
        title,
        ok: bad == 0,
        detail: what,
        elapsed: el,
        budget: Duration::from_secs(3600),
    };
    out.push(prop("7a", "hf - h1 == chi", pc.a, format!("{} systems, {} failures", pc.systems, pc.a)));
    out.push(prop("7b", "h1 >= nd", pc.b, format!("{} failures", pc.b)));
    out.push(prop("7c", "Koszul H2 = H3 = 0", pc.c, format!("{} systems checked, {} failures", pc.systems / 5, pc.c)));
    out.push(prop("7d", "nd == neg_part(chi), 60x60 grids", pc.d, format!("{} failures", pc.d)));
    out.push(prop(
        "7e-literal",
        "beta1 == dim H(M)_1 - dim H(M)_2 pointwise",
        pc.literal,
        format!("{} of {} systems fail, {} points", pc.literal, pc.systems, pc.literal_points),
    ));
    out.push(prop("7e-h0", "non-Koszul beta1 == dim H(M)_0 pointwise", pc.h0, format!("{} failures", pc.h0)));
    out.push(prop("7e-h34", "H(M)_3 = H(M)_4 = 0", pc.h34, format!("{} failures", pc.h34)));
    out.push(prop("7e-sum", "sum of (H(M)_1 - H(M)_2) == sum of non-Koszul beta1", pc.sums, format!("{} failures", pc.sums)));
    out.push(run("8", "syzygies of degree (3,*) from Hilbert-Burch data", 30, c8));
    out.push(run("9", "resolution templates", 120, c9));
    let mut warnings = Vec::new();
    out.push(run("10", "pencil first syzygies", 300, || c10(&mut warnings)));
    out.push(run("11", "psi_1 image on the quartic", 5, c11));

    let mut unexpected = Vec::new();
    for o in &out {
        let red = EXPECTED_RED.contains(&o.id);
        let tag = match (o.ok, red) {
            (true, _) => "PASS",
            (false, true) => "FAIL (expected)",
            (false, false) => "FAIL",
        };
        println!(
            "[{tag}] {:<10} {} | {} | {:.2}s (budget {}s)",
            o.id,
            o.title,
            o.detail,
            o.elapsed.as_secs_f64(),
            o.budget.as_secs()
        );
        if o.ok == red {
            unexpected.push(o.id);
        }
    }
    for w in &warnings {
        println!("[WARN] {w}");
    }
    assert!(unexpected.is_empty(), "unexpected outcomes: {unexpected:?}");
}
