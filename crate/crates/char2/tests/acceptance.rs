//! Acceptance suite: one line per criterion, exact equality throughout and
//! a wall-clock limit per criterion. Runs without the libtest harness so the
//! report is always printed.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use char2::cli::random_ratfunc;
use char2_core::algebra::factor::monic_of_degree;
use char2_core::algebra::{divisor_of, make_constant_set_v, FieldElem, FieldSpec, Poly, RatFunc};
use char2_core::artin_schreier::{solve_deg2, solve_deg4, AsDegree};
use char2_core::certificates::s1::check_s1_certificate;
use char2_core::certificates::t1::check_t1_certificate;
use char2_core::certificates::{
    build_s1_certificate, build_t1_certificate, check_power_relation, compute_u, compute_v, lemma_sigma_search,
    member_s, s1_by_certificate, s1_by_solver, search_basecase_counterexample, Base, SCertificate, SFailure, TCertificate, TFailure,
};
use char2_core::reducer::{check_ksystem, compile, embed, solve_nat, NAssignment, NAtom, NSystem};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SEED: u64 = 20_240_601;

type Tamper<'a, C> = Box<dyn Fn(&mut C) + 'a>;
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn gf4() -> FieldSpec {
    FieldSpec::with_degree(2).unwrap()
}

fn gf16() -> FieldSpec {
    FieldSpec::with_degree(4).unwrap()
}

fn rng(criterion: u64) -> StdRng {
    StdRng::seed_from_u64(SEED ^ (criterion << 32))
}

fn nonconstant(rng: &mut StdRng, field: FieldSpec, max_height: u32) -> RatFunc {
    loop {
        let h = rng.random_range(1..=max_height);
        let x = random_ratfunc(rng, field, h);
        if !x.is_constant() {
            return x;
        }
    }
}

fn random_elem(rng: &mut StdRng, field: FieldSpec, lo: u64) -> FieldElem {
    field.elem(rng.random_range(lo..field.order())).unwrap()
}

fn cst(c: FieldElem) -> RatFunc {
    RatFunc::constant(c)
}

struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Self {
        Self { failures: Vec::new(), summary: String::new() }
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let f = FieldSpec::gf256();
    let mut rng = rng(1);
    for _ in 0..1000 {
        let x = nonconstant(&mut rng, f, 6);
        let s = rng.random_range(0..=4u32);
        let y = x.frobenius_pow(s);
        match check_power_relation(&x, &y) {
            Ok(Some(rel)) if rel.s == s && rel.r == s && rel.j == s => {}
            other => o.fail(format!("x = {x}, s = {s}: {other:?}")),
        }
        for inverted in [false, true] {
            let u = compute_u(&x, inverted).unwrap();
            let v = compute_v(&y, s, inverted).unwrap();
            if v != u.frobenius_pow(s) {
                o.fail(format!("x = {x}, s = {s}, inverted = {inverted}: v != u^(2^s)"));
            }
        }
    }
    o.summary = "1000 pairs (x, x^(2^s)) over GF(2^8)".into();
    o
}

/// Whether `y = x^(2^k)` for some `k`, by iterating Frobenius while the
/// height of `x^(2^k)` does not exceed that of `y`.
fn in_orbit(x: &RatFunc, y: &RatFunc) -> bool {
    let hy = y.height().unwrap();
    let mut p = x.clone();
    for _ in 0..=x.field().degree() + 64 {
        if p == *y {
            return true;
        }
        if p.height().unwrap() > hy {
            return false;
        }
        p = p.square();
    }
    false
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let f = FieldSpec::gf256();
    let t = RatFunc::t(f);
    let mut rng = rng(2);
    let mut n = 0;
    while n < 500 {
        let x = nonconstant(&mut rng, f, 6);
        let s = rng.random_range(0..=3u32);
        let xs = x.frobenius_pow(s);
        let y = match n % 6 {
            0 => random_ratfunc(&mut rng, f, 6),
            1 => &xs + &cst(random_elem(&mut rng, f, 1)),
            2 => &xs * &cst(random_elem(&mut rng, f, 2)),
            3 => &xs * &x,
            4 => &xs + &t,
            _ => (&x + &cst(random_elem(&mut rng, f, 1))).frobenius_pow(s),
        };
        if y.is_zero() || in_orbit(&x, &y) {
            continue;
        }
        n += 1;
        match check_power_relation(&x, &y) {
            Ok(None) => {}
            other => o.fail(format!("x = {x}, y = {y}: {other:?}")),
        }
    }
    o.summary = "500 pairs outside the Frobenius orbit".into();
    o
}

fn s1_tampers<'a>(o: &mut Outcome, f: FieldSpec, v: &'a [FieldElem]) -> usize {
    let t = RatFunc::t(f);
    let base = build_s1_certificate(f, 1, v);
    let n = v.len();
    let idx = move |i: usize, j: usize| i * n + j;
    let other_in_orbit = |c: FieldElem, d: FieldElem| {
        c.frobenius_orbit().into_iter().find(|&e| e != d).expect("orbit of size > 1")
    };
    let outside = f.one();
    let d1 = base.family[idx(1, 0)].d;
    let cases: Vec<(&str, Tamper<'a, SCertificate>, SFailure)> = vec![
        ("w -> t^5", Box::new(move |c| c.w = RatFunc::t_pow(f, 5)), SFailure::F1),
        ("u + t", Box::new({ let t = t.clone(); move |c| c.u = &c.u + &t }), SFailure::F1),
        ("v + t", Box::new({ let t = t.clone(); move |c| c.v = &c.v + &t }), SFailure::F2),
        ("v -> 0", Box::new(move |c| c.v = RatFunc::zero(f)), SFailure::F2),
        (
            "d' outside orbit",
            Box::new(move |c| c.family[idx(0, 1)].d_prime = outside),
            SFailure::OrbitDPrime { c_prime: v[1], d_prime: outside },
        ),
        (
            "one inconsistent d",
            Box::new(move |c| c.family[idx(1, 2)].d = other_in_orbit(v[1], d1)),
            SFailure::InconsistentD { c: v[1] },
        ),
        (
            "consistent wrong d",
            Box::new(move |c| {
                let wrong = other_in_orbit(v[1], d1);
                for j in 0..n {
                    c.family[idx(1, j)].d = wrong;
                }
            }),
            SFailure::F4 { c: v[1], c_prime: v[0] },
        ),
        (
            "u_dd' + t",
            Box::new({ let t = t.clone(); move |c| c.family[idx(1, 2)].u = &c.family[idx(1, 2)].u + &t }),
            SFailure::F4 { c: v[1], c_prime: v[2] },
        ),
        (
            "v_dd' + t",
            Box::new({ let t = t.clone(); move |c| c.family[idx(1, 2)].v = &c.family[idx(1, 2)].v + &t }),
            SFailure::F3 { c: v[1], c_prime: v[2] },
        ),
        (
            "entry removed",
            Box::new(move |c| {
                c.family.remove(idx(2, 3));
            }),
            SFailure::MissingEntry { c: v[2], c_prime: v[3] },
        ),
    ];
    let count = cases.len();
    for (name, tamper, expected) in cases {
        let mut cert = base.clone();
        tamper(&mut cert);
        let got = check_s1_certificate(&cert);
        if got != Err(expected.clone()) {
            o.fail(format!("S1 tamper '{name}': expected {expected:?}, got {got:?}"));
        }
    }
    count
}

fn t1_tampers<'a>(o: &mut Outcome, f: FieldSpec, v: &'a [FieldElem]) -> usize {
    let t = RatFunc::t(f);
    let x = &t + &RatFunc::one(f);
    let base = build_t1_certificate(&x, 1, v).unwrap();
    let u = compute_u(&x, false).unwrap();
    let n = v.len();
    let idx = move |i: usize, j: usize, sign_slot: usize| (i * n + j) * 4 + sign_slot;
    let outside = f.one();
    let d1 = base.entries[idx(1, 0, 0)].d;
    let wrong_d = v[1].frobenius_orbit().into_iter().find(|&e| e != d1).unwrap();
    let first_g1 = TFailure::G1 { c: v[0], c_prime: v[1], e: 1, g: 1 };
    let cases: Vec<(&str, Tamper<'a, TCertificate>, TFailure)> = vec![
        ("v -> u^3", Box::new({ let u = u.clone(); move |c| c.v = u.pow(3) }), first_g1.clone()),
        ("s + 1", Box::new(|c| c.s += 1), TFailure::G3 { c: v[0], c_prime: v[0], e: 1, g: 1 }),
        (
            "sigma + t",
            Box::new({ let t = t.clone(); move |c| c.entries[idx(0, 1, 0)].sigma = &c.entries[idx(0, 1, 0)].sigma + &t }),
            first_g1.clone(),
        ),
        (
            "lambda + t",
            Box::new({ let t = t.clone(); move |c| c.entries[idx(0, 1, 0)].lambda = &c.entries[idx(0, 1, 0)].lambda + &t }),
            TFailure::G3 { c: v[0], c_prime: v[1], e: 1, g: 1 },
        ),
        (
            "mu + t",
            Box::new({ let t = t.clone(); move |c| c.mu[1].mu = &c.mu[1].mu + &t }),
            TFailure::G5 { c: v[0], e: 1, g: -1 },
        ),
        (
            "d' outside orbit",
            Box::new(move |c| c.entries[idx(0, 1, 0)].d_prime = outside),
            TFailure::OrbitDPrime { c_prime: v[1], d_prime: outside },
        ),
        (
            "one inconsistent d",
            Box::new(move |c| c.entries[idx(1, 0, 1)].d = wrong_d),
            TFailure::InconsistentD { c: v[1] },
        ),
        ("v -> v^2", Box::new(|c| c.v = c.v.square()), first_g1.clone()),
        (
            "mu removed",
            Box::new(|c| {
                c.mu.remove(0);
            }),
            TFailure::MissingMu { c: v[0], e: 1, g: 1 },
        ),
        ("v -> 0", Box::new(move |c| c.v = RatFunc::zero(f)), TFailure::ZeroV),
    ];
    let count = cases.len();
    for (name, tamper, expected) in cases {
        let mut cert = base.clone();
        tamper(&mut cert);
        let got = check_t1_certificate(&cert);
        if got != Err(expected.clone()) {
            o.fail(format!("T1 tamper '{name}': expected {expected:?}, got {got:?}"));
        }
    }
    count
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let f = FieldSpec::gf256();
    let v = make_constant_set_v(f, 7).unwrap();
    for s in 0..=5 {
        let cert = build_s1_certificate(f, s, &v);
        if let Err(e) = check_s1_certificate(&cert) {
            o.fail(format!("S1 s = {s}: {e}"));
        }
    }
    let mut rng = rng(3);
    for i in 0..50u32 {
        let h = rng.random_range(0..=3);
        let x = random_ratfunc(&mut rng, f, h);
        let s = i % 4;
        match build_t1_certificate(&x, s, &v) {
            Ok(cert) => {
                if let Err(e) = check_t1_certificate(&cert) {
                    o.fail(format!("T1 x = {x}, s = {s}: {e}"));
                }
            }
            Err(e) => o.fail(format!("T1 x = {x}, s = {s}: build failed: {e}")),
        }
    }
    let tampers = s1_tampers(&mut o, f, &v) + t1_tampers(&mut o, f, &v);
    o.summary = format!("S1 s = 0..5, 50 T1 with s <= 3, {tampers} tampers");
    o
}

/// Every element of height at most `h`, zero included, without storing them.
fn for_each_height(field: FieldSpec, h: u32, mut visit: impl FnMut(RatFunc)) {
    visit(RatFunc::zero(field));
    let q = field.order();
    let total = q.pow(h + 1);
    for dd in 0..=h as usize {
        for den in monic_of_degree(field, dd) {
            for code in 1..total {
                let coeffs: Vec<u64> = (0..=h).map(|i| code / q.pow(i) % q).collect();
                let num = Poly::from_bits(field, &coeffs).unwrap();
                if num.gcd(&den).is_one() {
                    visit(RatFunc::new(num, den.clone()).unwrap());
                }
            }
        }
    }
}

/// Solutions of `z^q + z = beta` by exhaustion: a solution `g/d` in lowest
/// terms has `d^q` as the denominator of `beta` and `deg g <= height/q`.
fn as_oracle(beta: &RatFunc, degree: AsDegree) -> Vec<RatFunc> {
    let f = beta.field();
    let q = degree.exponent() as u32;
    let mut d = beta.denom().clone();
    for _ in 0..q.trailing_zeros() {
        match d.sqrt() {
            Some(r) => d = r,
            None => return Vec::new(),
        }
    }
    let bound = beta.height().map_or(0, |h| h / q as u64) as u32;
    let mut out = Vec::new();
    let order = f.order();
    for code in 0..order.pow(bound + 1) {
        let coeffs: Vec<u64> = (0..=bound).map(|i| code / order.pow(i) % order).collect();
        let g = Poly::from_bits(f, &coeffs).unwrap();
        let z = RatFunc::new(g, d.clone()).unwrap();
        if degree.apply(&z) == *beta {
            out.push(z);
        }
    }
    out.sort();
    out
}

fn solver(beta: &RatFunc, degree: AsDegree) -> Vec<RatFunc> {
    let sol = match degree {
        AsDegree::Two => solve_deg2(beta),
        AsDegree::Four => solve_deg4(beta),
    };
    sol.map(|s| s.solutions()).unwrap_or_default()
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    let f = gf4();
    let mut examined = 0u64;
    for degree in [AsDegree::Two, AsDegree::Four] {
        // Nonconstant z gives height(z^q + z) = q height(z).
        let mut images: BTreeMap<RatFunc, Vec<RatFunc>> = BTreeMap::new();
        for_each_height(f, 5 / degree.exponent() as u32, |z| {
            images.entry(degree.apply(&z)).or_default().push(z);
        });
        for zs in images.values_mut() {
            zs.sort();
        }
        for_each_height(f, 5, |beta| {
            examined += 1;
            let expected = images.get(&beta).cloned().unwrap_or_default();
            let got = solver(&beta, degree);
            if got != expected && o.failures.len() < 20 {
                o.fail(format!("GF(4) q = {} beta = {beta}: solver {got:?}, oracle {expected:?}", degree.exponent()));
            }
        });
    }
    let f = gf16();
    let mut rng = rng(4);
    let mut solvable = 0;
    for i in 0..200 {
        let degree = if i % 2 == 0 { AsDegree::Two } else { AsDegree::Four };
        let zh = if degree == AsDegree::Two { 2 } else { 1 };
        let beta = match i % 4 {
            0 | 1 => random_ratfunc(&mut rng, f, 4),
            2 => degree.apply(&random_ratfunc(&mut rng, f, zh)),
            _ => &degree.apply(&random_ratfunc(&mut rng, f, zh)) + &cst(random_elem(&mut rng, f, 1)),
        };
        for degree in [AsDegree::Two, AsDegree::Four] {
            let expected = as_oracle(&beta, degree);
            let got = solver(&beta, degree);
            solvable += !expected.is_empty() as usize;
            if got != expected {
                o.fail(format!("GF(16) q = {} beta = {beta}: solver {got:?}, oracle {expected:?}", degree.exponent()));
            }
        }
    }
    o.summary = format!("{examined} (beta, q) over GF(4), 200 beta over GF(16) at q = 2 and 4 ({solvable} solvable)");
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let f = FieldSpec::gf256();
    let mut rng = rng(5);
    for _ in 0..1000 {
        let w = nonconstant(&mut rng, f, 6);
        let a = random_elem(&mut rng, f, 0);
        let b = loop {
            let b = random_elem(&mut rng, f, 0);
            if b != a {
                break b;
            }
        };
        let q = &(&w + &cst(a)) / &(&w + &cst(b));
        if q.height() != w.height() {
            o.fail(format!("w = {w}, a = {a}, b = {b}: height {:?} vs {:?}", q.height(), w.height()));
        }
    }
    for _ in 0..1000 {
        let g = loop {
            let h = rng.random_range(0..=6);
            let g = random_ratfunc(&mut rng, f, h);
            if !g.is_zero() {
                break g;
            }
        };
        let d = divisor_of(&g).unwrap();
        if d.degree() != 0 || Ok(d.zero_degree()) != g.height() {
            o.fail(format!("f = {g}: divisor {d} has degree {}", d.degree()));
        }
    }
    o.summary = "1000 fractional shifts, 1000 principal divisors over GF(2^8)".into();
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let f = gf4();
    match search_basecase_counterexample(f, 4, 4) {
        Ok(None) => {}
        other => o.fail(format!("search_basecase_counterexample(4, 4): {other:?}")),
    }
    match lemma_sigma_search(f, 3) {
        Ok(pairs) => {
            for (sigma, mu) in &pairs {
                let kernel = |z: &RatFunc| AsDegree::Four.apply(z).is_zero();
                if !kernel(sigma) || !kernel(mu) {
                    o.fail(format!("sigma = {sigma}, mu = {mu}"));
                }
            }
            o.summary = format!("base case height 4 over GF(4): none; {} sigma pairs, all in the kernel", pairs.len());
        }
        Err(e) => o.fail(format!("lemma_sigma_search(3): {e}")),
    }
    o
}

fn random_nsystem(rng: &mut StdRng) -> NSystem {
    let nv = rng.random_range(1..=4usize);
    let na = rng.random_range(1..=5usize);
    let var = |rng: &mut StdRng| rng.random_range(0..nv);
    let atoms = (0..na)
        .map(|_| match rng.random_range(0..3) {
            0 => NAtom::SumEq { a: var(rng), b: var(rng), sum: var(rng) },
            1 => NAtom::Div2 { a: var(rng), b: var(rng) },
            _ => NAtom::ConstEq { a: var(rng), k: rng.random_range(0..16) },
        })
        .collect();
    NSystem { variables: (0..nv).map(|i| format!("n{i}")).collect(), atoms, spans: Vec::new() }
}

/// Checks that the failures over K for an assignment violating exactly one
/// atom over N are nonempty and all inside that atom's image.
fn check_violation(o: &mut Outcome, sys: &NSystem, values: Vec<u64>) -> bool {
    let na = NAssignment { values };
    let broken = na.failures(sys);
    let [i] = broken[..] else { return false };
    let ks = compile(sys);
    let ka = embed(&ks, &na, FieldSpec::gf256());
    let got = check_ksystem(&ks, &ka).failures;
    let image = ks.image_of(i);
    if got.is_empty() || got.iter().any(|a| !image.contains(a)) {
        o.fail(format!("system '{sys}' values {:?}: broken atom {i}, image {image:?}, reported {got:?}", na.values));
    }
    true
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = rng(7);
    let (mut solvable, mut violations) = (0, 0);
    for _ in 0..100 {
        let sys = random_nsystem(&mut rng);
        let n = sys.variables.len();
        if let Some(na) = solve_nat(&sys, 16) {
            solvable += 1;
            let ks = compile(&sys);
            let ka = embed(&ks, &na, FieldSpec::gf256());
            let r = check_ksystem(&ks, &ka);
            if !r.holds() {
                o.fail(format!("system '{sys}' solution {:?} fails at {:?}", na.values, r.failures));
            }
            for v in 0..n {
                for delta in [1u64, 2] {
                    let mut values = na.values.clone();
                    values[v] += delta;
                    violations += check_violation(&mut o, &sys, values) as usize;
                }
            }
        }
        for _ in 0..20 {
            let values = (0..n).map(|_| rng.random_range(0..16)).collect();
            violations += check_violation(&mut o, &sys, values) as usize;
        }
    }
    if violations < 100 {
        o.fail(format!("only {violations} single-atom violations generated"));
    }
    o.summary = format!("100 systems ({solvable} solvable), {violations} single-atom violations");
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    let f = FieldSpec::gf256();
    let v = make_constant_set_v(f, 7).unwrap();
    for k in 0..=64u32 {
        let w = RatFunc::t_pow(f, k as i64);
        let expected = k.is_power_of_two().then(|| k.trailing_zeros());
        let mut stages = vec![w.clone()];
        stages.extend(w.sqrt());
        for z in &stages {
            let by_cert = s1_by_certificate(z, Base::T, &v).is_some();
            let by_solver = s1_by_solver(z, Base::T, &v);
            if by_cert != by_solver {
                o.fail(format!("t^{k}: paths disagree on {z} (certificate {by_cert}, solver {by_solver})"));
            }
        }
        match member_s(&w, &v) {
            Ok(got) if got == expected => {}
            other => o.fail(format!("member_S(t^{k}) = {other:?}, expected {expected:?}")),
        }
    }
    o.summary = "t^k for k = 0..64, |V| = 7, GF(2^8)".into();
    o
}

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "power relation, forward", 60, criterion_1),
        (2, "power relation, backward", 120, criterion_2),
        (3, "S1/T1 certificates and tampers", 60, criterion_3),
        (4, "Artin-Schreier solver vs exhaustion", 300, criterion_4),
        (5, "fractional height and divisor degree", 30, criterion_5),
        (6, "falsification searches", 300, criterion_6),
        (7, "reduction soundness", 60, criterion_7),
        (8, "member_S on t^k", 60, criterion_8),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut all_pass = true;
    for (n, name, limit, run) in criteria {
        if !filter.is_empty() && !filter.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let pass = outcome.failures.is_empty() && in_time;
        all_pass &= pass;
        println!(
            "{} criterion {n}: {name}: {}; {} failures; {:.1}s (limit {limit}s)",
            if pass { "PASS" } else { "FAIL" },
            outcome.summary,
            outcome.failures.len(),
            elapsed.as_secs_f64(),
        );
        for f in outcome.failures.iter().take(10) {
            println!("    {f}");
        }
    }
    if !all_pass {
        std::process::exit(1);
    }
}
