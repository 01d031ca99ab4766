//! End-to-end acceptance suite: one PASS/FAIL line per criterion, exact
//! equality throughout. Exits nonzero if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use arithpoints_core::covers::{compose_with_isogeny, transported_basis, MarkedTorusCover};
use arithpoints_core::homology::{
    absolute_homology_basis, build_chain_complex, period_vector, relative_homology_basis,
};
use arithpoints_core::orbits::{act_shear_h, act_shear_v, canonical_form, orbit};
use arithpoints_core::origami::{enumerate_origamis, singularity_profile};
use arithpoints_core::satake::{dim_one_classification, orbit_dim, Family, Rep, RootSystemQuery};
use arithpoints_core::strata::{solve_rank_degree, RankDegreeSolution};
use arithpoints_core::superelliptic::{
    divisor_of_differential, divisor_of_function, stratum_of_form, verify_torsion_witness, Divisor,
    FunctionExpr, Place, SuperellipticCurve,
};
use arithpoints_core::{CanonicalOrigami, GaussianRational, Origami};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn curve(s: &str) -> SuperellipticCurve {
    s.parse().expect("valid curve")
}

fn place(s: &str) -> Place {
    s.parse().expect("valid place")
}

fn func(c: &SuperellipticCurve, s: &str) -> Result<FunctionExpr, String> {
    c.function(s).map_err(|e| e.to_string())
}

fn septic_golden() -> Check {
    let c = curve("2; f = x^7 - 1");
    let (pi, mi, inf) = (place("(0, i)"), place("(0, -i)"), Place::Infinite(0));
    let form = func(&c, "x / y")?;
    let d = divisor_of_differential(&c, &form).map_err(|e| e.to_string())?;
    let want = Divisor::from_terms([(pi.clone(), 1), (mi, 1), (inf.clone(), 2)]);
    ensure(d == want, || format!("div(x dx/y) = {d:?}"))?;
    let w = func(&c, "y - i")?;
    let d = divisor_of_function(&c, &w, &[]).map_err(|e| e.to_string())?;
    let want = Divisor::from_terms([(pi.clone(), 7), (inf.clone(), -7)]);
    ensure(d == want, || format!("div(y - i) = {d:?}"))?;
    ensure(verify_torsion_witness(&c, &pi, &inf, 7, &w) == Ok(true), || "7-torsion witness".into())?;
    let s = stratum_of_form(&c, &form).map_err(|e| e.to_string())?;
    ensure(s.alpha() == [2, 1, 1], || format!("stratum {s}"))?;
    ensure(c.genus() == 3, || format!("genus {}", c.genus()))
}

fn veech_family() -> Check {
    for n in [5i64, 7, 9, 11] {
        let c = curve(&format!("2; f = x^{n} - 1"));
        let d = divisor_of_differential(&c, &func(&c, "1 / y")?).map_err(|e| e.to_string())?;
        ensure(d == Divisor::from_terms([(Place::Infinite(0), n - 3)]), || format!("n = {n}: {d:?}"))?;
        ensure(c.genus() as i64 == (n - 1) / 2, || format!("n = {n}: genus {}", c.genus()))?;
        let s = stratum_of_form(&c, &func(&c, "1 / y")?).map_err(|e| e.to_string())?;
        ensure(s.alpha() == [(n - 3) as u32], || format!("n = {n}: stratum {s}"))?;
    }
    let c = curve("2; f = x^6 - x");
    let s = stratum_of_form(&c, &func(&c, "1 / y")?).map_err(|e| e.to_string())?;
    ensure(s.alpha() == [1, 1], || format!("sextic stratum {s}"))?;
    ensure(c.genus() == 2, || format!("sextic genus {}", c.genus()))
}

fn quartic_family() -> Check {
    let c = curve("4; f = x*(x - 1)*(x + 3)");
    ensure(c.genus() == 3, || format!("genus {}", c.genus()))?;
    for x0 in [0i64, 1, -3] {
        let u = func(&c, &format!("(x - ({x0})) / y^3"))?;
        let d = divisor_of_differential(&c, &u).map_err(|e| e.to_string())?;
        let p = Place::finite(GaussianRational::from(x0), GaussianRational::from(0));
        ensure(d == Divisor::from_terms([(p, 4)]), || format!("c = {x0}: {d:?}"))?;
        let s = stratum_of_form(&c, &u).map_err(|e| e.to_string())?;
        ensure(s.alpha() == [4], || format!("c = {x0}: stratum {s}"))?;
    }
    Ok(())
}

fn rank_degree_scan() -> Check {
    let got: BTreeSet<(u64, u64, u64)> = solve_rank_degree(10, 10, 10)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|s| (s.d, s.k, s.u))
        .collect();
    // Re-substitution with both sides doubled, over d = 0..=10.
    let mut oracle = BTreeSet::new();
    let mut triples = 0;
    for d in 0..=10i128 {
        for k in 1..=10i128 {
            for u in 0..=10i128 {
                triples += 1;
                if 2 * (u + 2 * k - 1) == d * (k * (k + 1) + 2 * u * k) {
                    oracle.insert((d as u64, k as u64, u as u64));
                }
            }
        }
    }
    ensure(triples == 1210, || format!("{triples} triples scanned"))?;
    let mut want: BTreeSet<(u64, u64, u64)> = (0..=10).map(|u| (1, 1, u)).collect();
    want.insert((1, 2, 0));
    ensure(oracle == want, || format!("oracle {oracle:?}"))?;
    ensure(got == want, || format!("scan {got:?}"))?;
    ensure(RankDegreeSolution::satisfies(1, 2, 0), || "(1,2,0) rejected".into())
}

fn satake_table() -> Check {
    let binom = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
    for n in 1..=8usize {
        for r in 1..=n {
            let q = RootSystemQuery::new(Family::A, n, Rep::ExteriorPower(r)).map_err(|e| e.to_string())?;
            let d = orbit_dim(&q).map_err(|e| e.to_string())?;
            ensure(d == r * (n + 1 - r), || format!("{q}: {d}"))?;
        }
        if n >= 2 {
            let q = RootSystemQuery::new(Family::B, n, Rep::Spin).map_err(|e| e.to_string())?;
            let d = orbit_dim(&q).map_err(|e| e.to_string())?;
            ensure(d == binom(n + 1, 2), || format!("{q}: {d}"))?;
        }
        if n >= 3 {
            let q = RootSystemQuery::new(Family::D, n, Rep::HalfSpin).map_err(|e| e.to_string())?;
            let d = orbit_dim(&q).map_err(|e| e.to_string())?;
            ensure(d == binom(n, 2), || format!("{q}: {d}"))?;
        }
    }
    let got = dim_one_classification(8).map_err(|e| e.to_string())?;
    let want = vec![RootSystemQuery::new(Family::A, 1, Rep::ExteriorPower(1)).unwrap()];
    ensure(got == want, || format!("classification {got:?}"))
}

fn origami_homology_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let n = rng.gen_range(1..=10);
        let o = common::random_origami(&mut rng, n);
        let err = |what: &str| format!("{o}: {what}");
        let s = singularity_profile(&o).map_err(|e| e.to_string())?;
        let g = s.genus() as usize;
        let nz = s.zero_count();
        ensure(s.total_order() as usize + 2 == 2 * g, || err("sum of orders"))?;

        let cx = build_chain_complex(&o).map_err(|e| e.to_string())?;
        let product = cx.d1.checked_mul(&cx.d2).map_err(|e| e.to_string())?;
        ensure(product.is_zero(), || err("d1·d2 ≠ 0"))?;
        let chi = cx.euler_characteristic();
        ensure(chi == cx.vertex_count() as i64 - cx.edge_count() as i64 + cx.face_count() as i64, || {
            err("Euler characteristic")
        })?;
        ensure(2 - chi == 2 * g as i64, || err("genus from profile differs from Euler genus"))?;

        let rel = relative_homology_basis(&o).map_err(|e| e.to_string())?;
        let abs = absolute_homology_basis(&o).map_err(|e| e.to_string())?;
        let gap = nz.saturating_sub(1);
        ensure(rel.rank == 2 * g + gap && rel.cycles.len() == rel.rank, || err("relative rank"))?;
        ensure(abs.rank == 2 * g, || err("absolute rank"))?;
        ensure(rel.rank - abs.rank == gap, || err("rank gap"))?;
        let pv = period_vector(&o, &rel).map_err(|e| e.to_string())?;
        ensure(pv.entries.iter().all(GaussianRational::is_gaussian_integer), || err("non-integral period"))?;
    }
    Ok(())
}

fn isogeny_composition() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let n = rng.gen_range(1..=6);
        let o = common::random_origami(&mut rng, n);
        let s = singularity_profile(&o).map_err(|e| e.to_string())?;
        let rel = relative_homology_basis(&o).map_err(|e| e.to_string())?;
        let pv = period_vector(&o, &rel).map_err(|e| e.to_string())?;
        let cover = MarkedTorusCover::from_origami(&o).map_err(|e| e.to_string())?;
        for big_n in [2usize, 3] {
            let big = compose_with_isogeny(&cover, big_n).map_err(|e| e.to_string())?;
            ensure(big.squares() == n * big_n * big_n, || format!("{o}, N = {big_n}: square count"))?;
            let bs = singularity_profile(&big).map_err(|e| e.to_string())?;
            ensure(bs == s, || format!("{o}, N = {big_n}: stratum {bs} vs {s}"))?;
            let tb = transported_basis(&o, big_n, &rel).map_err(|e| e.to_string())?;
            let big_pv = period_vector(&big, &tb).map_err(|e| e.to_string())?;
            let scale = GaussianRational::from(big_n as i64);
            ensure(big_pv == pv.scaled(&scale), || format!("{o}, N = {big_n}: periods not scaled by N"))?;
        }
    }
    Ok(())
}

/// Fixed-point closure under both shears, independent of the orbit search.
fn brute_closure(o: &Origami) -> arithpoints_core::Result<BTreeSet<CanonicalOrigami>> {
    let mut seen = BTreeSet::from([canonical_form(o)?]);
    loop {
        let mut next = seen.clone();
        for c in &seen {
            next.insert(canonical_form(&act_shear_h(c.origami())?)?);
            next.insert(canonical_form(&act_shear_v(c.origami())?)?);
        }
        if next.len() == seen.len() {
            return Ok(seen);
        }
        seen = next;
    }
}

fn orbit_suite() -> Check {
    for n in 1..=5 {
        let classes: BTreeSet<CanonicalOrigami> = enumerate_origamis(n)
            .map_err(|e| e.to_string())?
            .iter()
            .map(canonical_form)
            .collect::<arithpoints_core::Result<_>>()
            .map_err(|e| e.to_string())?;
        for shear in [act_shear_h, act_shear_v] {
            let image: BTreeSet<CanonicalOrigami> = classes
                .iter()
                .map(|c| canonical_form(&shear(c.origami())?))
                .collect::<arithpoints_core::Result<_>>()
                .map_err(|e| e.to_string())?;
            ensure(image == classes, || format!("n = {n}: a shear is not a bijection"))?;
        }
        let mut covered: BTreeMap<CanonicalOrigami, usize> = BTreeMap::new();
        for c in &classes {
            if covered.contains_key(c) {
                continue;
            }
            let report = orbit(c.origami()).map_err(|e| e.to_string())?;
            ensure(report.size == report.representatives.len(), || format!("{c:?}: size"))?;
            for r in &report.representatives {
                let s = singularity_profile(r.origami()).map_err(|e| e.to_string())?;
                ensure(s == report.stratum, || format!("{c:?}: stratum varies along the orbit"))?;
                covered.insert(r.clone(), report.size);
            }
            let brute = brute_closure(c.origami()).map_err(|e| e.to_string())?;
            let bfs: BTreeSet<CanonicalOrigami> = report.representatives.into_iter().collect();
            ensure(brute == bfs, || format!("{c:?}: BFS and brute-force closures differ"))?;
        }
        ensure(covered.len() == classes.len(), || format!("n = {n}: orbits miss classes"))?;
    }
    let torus = orbit(&Origami::torus()).map_err(|e| e.to_string())?;
    ensure(torus.size == 1, || format!("1-square orbit size {}", torus.size))
}

struct Family3 {
    curve: SuperellipticCurve,
    atoms: Vec<&'static str>,
}

fn random_expr<R: Rng>(rng: &mut R, atoms: &[&str]) -> String {
    let mut num = vec!["1".to_string()];
    let mut den = vec!["1".to_string()];
    for a in atoms {
        let e: i32 = rng.gen_range(-2..=2);
        let side = if e > 0 { &mut num } else { &mut den };
        for _ in 0..e.abs() {
            side.push(format!("({a})"));
        }
    }
    let c = rng.gen_range(1..=5);
    format!("{c} * {} / ({})", num.join("*"), den.join("*"))
}

fn divisor_degree_laws() -> Check {
    let families = [
        Family3 { curve: curve("2; f = x^7 - 1"), atoms: vec!["x", "x - 1", "y - i", "y + i"] },
        Family3 { curve: curve("2; f = x^6 - x"), atoms: vec!["x", "x - 1", "y - x^3", "y + x^3"] },
        Family3 { curve: curve("4; f = x*(x - 1)*(x + 3)"), atoms: vec!["x", "x - 1", "x + 3", "y"] },
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..500 {
        let fam = &families[i % families.len()];
        let c = &fam.curve;
        let body = random_expr(&mut rng, &fam.atoms);
        if rng.gen_bool(0.5) {
            let u = func(c, &body)?;
            let d = divisor_of_function(c, &u, &[]).map_err(|e| format!("{c}: {body}: {e}"))?;
            ensure(d.degree() == 0, || format!("{c}: {body}: degree {}", d.degree()))?;
        } else {
            let s = format!("({body}) / y^{}", c.m() - 1);
            let u = func(c, &s)?;
            let d = divisor_of_differential(c, &u).map_err(|e| format!("{c}: {s}: {e}"))?;
            ensure(d.degree() == 2 * c.genus() as i64 - 2, || format!("{c}: {s}: degree {}", d.degree()))?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("1 septic golden divisors, stratum and genus", septic_golden),
        ("2 hyperelliptic minimal strata and sextic", veech_family),
        ("3 quartic genus-3 tangency points", quartic_family),
        ("4 rank-degree scan", rank_degree_scan),
        ("5 highest-weight orbit dimensions", satake_table),
        ("6 origami homology properties", origami_homology_suite),
        ("7 isogeny composition", isogeny_composition),
        ("8 SL(2,Z) orbit suite", orbit_suite),
        ("9 divisor degree laws", divisor_degree_laws),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS  criterion {name} ({:.2?})", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
