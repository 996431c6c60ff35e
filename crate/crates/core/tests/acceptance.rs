//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use riordan::campaign::{self, CampaignConfig, Conventions, Suite};
use riordan::expr;
use riordan::projective::level_matrix;
use riordan::random;
use riordan::verde_star::SignedBox;
use riordan::{Convention, Elem, FormalMap, LaurentSeries, Monomial, MonomialMatrix, RiordanElement, Ring, Series, SignedMonomial};

const SEED: u64 = 20_240_611;

fn rings() -> [Ring; 3] {
    [Ring::Integer, Ring::Rational, Ring::mod_prime(7).unwrap()]
}

/// Naive sparse integer polynomials truncated at total degree `k`.
#[derive(Clone, PartialEq, Debug)]
struct Poly {
    k: u32,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Poly {
    fn from_series(s: &Series) -> Poly {
        let terms = s
            .terms()
            .map(|(m, c)| (m.exps().to_vec(), c.to_string().parse().unwrap()))
            .collect();
        Poly { k: s.trunc(), terms }
    }

    fn constant(d: usize, k: u32, c: i64) -> Poly {
        let mut p = Poly { k, terms: BTreeMap::new() };
        p.add_term(vec![0; d], BigInt::from(c));
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if e.iter().sum::<u32>() > self.k {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_default();
        *slot += c;
        if self.terms[&e] == BigInt::from(0) {
            self.terms.remove(&e);
        }
    }

    fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly { k: self.k, terms: BTreeMap::new() };
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(a.iter().zip(b).map(|(i, j)| i + j).collect(), x * y);
            }
        }
        out
    }

    /// Substitutes `x_j -> g[j]`, expanding each monomial by repeated
    /// multiplication.
    fn compose(&self, g: &[Poly]) -> Poly {
        let mut out = Poly { k: self.k, terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            let mut t = Poly { k: self.k, terms: [(vec![0; e.len()], c.clone())].into() };
            for (j, &n) in e.iter().enumerate() {
                for _ in 0..n {
                    t = t.mul(&g[j]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    fn coeff(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }
}

struct Gate {
    failures: usize,
}

impl Gate {
    fn report(&mut self, n: u32, ok: bool, detail: String) {
        println!("criterion {n}: {} - {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failures += 1;
        }
    }
}

fn campaign_grid(suite: Suite, trials: usize) -> (bool, String) {
    let start = Instant::now();
    let mut total = 0;
    let mut passed = 0;
    let mut bad = Vec::new();
    for ring in rings() {
        let cfg = CampaignConfig::new(suite, vec![1, 2, 3], vec![4, 6], ring, trials, SEED);
        let rep = campaign::run(&cfg).unwrap();
        total += rep.summary.trials;
        passed += rep.summary.passed;
        for r in rep.records.iter().filter(|r| !r.pass).take(3) {
            bad.push(format!("{} d={} k={} trial={}", r.ring, r.d, r.trunc, r.trial));
        }
        for d in [1, 2, 3] {
            for k in [4, 6] {
                let cell = rep.records.iter().filter(|r| r.d == d && r.trunc == k && r.pass).count();
                if cell != trials {
                    bad.push(format!("{ring} d={d} k={k}: {cell}/{trials}"));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    (
        bad.is_empty() && passed == total,
        format!("{passed}/{total} trials over d in 1..3, k in {{4,6}}, 3 rings in {secs:.1}s {bad:?}"),
    )
}

fn criterion_1(g: &mut Gate) {
    let start = Instant::now();
    let (ok, detail) = campaign_grid(Suite::Homomorphism, 200);
    let secs = start.elapsed().as_secs_f64();
    g.report(1, ok && secs < 60.0, detail);
}

fn criterion_2(g: &mut Gate) {
    let (ok, detail) = campaign_grid(Suite::Semigroup, 200);
    g.report(2, ok, detail);
}

fn criterion_3(g: &mut Gate) {
    let mut agree = 0;
    let mut oracle_agree = 0;
    let trials = 100;
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (t as u64) << 8);
        let d = 1 + t % 3;
        let k = 5;
        let ring = Ring::Integer;
        let a = if t % 2 == 0 {
            random::invertible(&mut rng, d, k, ring)
        } else {
            random::non_invertible(&mut rng, d, k, ring)
        };
        let c = random::coeff(&mut rng, ring);
        let u = random::sparse_series(&mut rng, d, k, ring, c, 1, random::MAX_TERMS);
        let direct = a.apply(&u).unwrap();
        let via_matrix = MonomialMatrix::riordan(&a).apply(&u).unwrap();
        agree += usize::from(direct == via_matrix);
        let g_poly: Vec<Poly> = a.g().components().iter().map(Poly::from_series).collect();
        let naive = Poly::from_series(a.f()).mul(&Poly::from_series(&u).compose(&g_poly));
        oracle_agree += usize::from(naive == Poly::from_series(&via_matrix));
    }
    g.report(
        3,
        agree == trials && oracle_agree == trials,
        format!("matrix-vector = action on {agree}/{trials}; naive expansion oracle agrees on {oracle_agree}/{trials}"),
    );
}

fn criterion_4(g: &mut Gate) {
    let k = 6;
    let mut maps = 0;
    let mut elems = 0;
    for t in 0..100 {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED.wrapping_add(t));
        let d = 1 + (t as usize) % 3;
        let ring = rings()[(t as usize / 3) % 3];
        let gm = random::invertible_map(&mut rng, d, k, ring);
        let inv = gm.inverse().unwrap();
        maps += usize::from(gm.compose(&inv).unwrap().is_identity() && inv.compose(&gm).unwrap().is_identity());
        let a = random::invertible(&mut rng, d, k, ring);
        let id = RiordanElement::identity(d, k, ring);
        let ai = a.inverse().unwrap();
        elems += usize::from(a.mul(&ai).unwrap() == id && ai.mul(&a).unwrap() == id);
    }
    // The alternating composition series for (id + h)^-1, with h = x^2.
    let z = Ring::Integer;
    let h = FormalMap::new(vec![Series::from_terms(1, k, z, [(Monomial::new(vec![2]), z.one())]).unwrap()]).unwrap();
    let gm = FormalMap::identity(1, k, z).add(&h).unwrap();
    let mut alt = FormalMap::identity(1, k, z);
    for r in 1..=k {
        let term = h.power(r);
        alt = if r % 2 == 1 { alt.sub(&term).unwrap() } else { alt.add(&term).unwrap() };
    }
    let erratum_fails = !gm.compose(&alt).unwrap().is_identity();
    let verified = gm.compose(&gm.inverse().unwrap()).unwrap().is_identity();
    g.report(
        4,
        maps == 100 && elems == 100 && erratum_fails && verified,
        format!(
            "map inverses {maps}/100, Riordan inverses {elems}/100; alternating series for x + x^2 gives {} (expected failure: {erratum_fails})",
            alt.components()[0]
        ),
    );
}

fn pascal(k: u32) -> RiordanElement {
    let z = Ring::Integer;
    let f = expr::series("1/(1-x1)", 1, k, z).unwrap();
    let g = expr::formal_map("x1/(1-x1)", 1, k, z).unwrap();
    RiordanElement::new(f, g).unwrap()
}

fn criterion_5(g: &mut Gate) {
    let k = 8usize;
    let mut tri = vec![vec![0i64; k + 1]; k + 1];
    for r in 0..=k {
        tri[r][0] = 1;
        for c in 1..=r {
            tri[r][c] = tri[r - 1][c - 1] + tri[r - 1][c];
        }
    }
    let m = MonomialMatrix::riordan(&pascal(k as u32));
    let mut checked = 0;
    let mut ok = true;
    for r in 0..=k {
        for c in 0..=k {
            if c <= r {
                checked += 1;
            }
            ok &= m.get(r, c).to_i64() == Some(tri[r][c]);
        }
    }
    g.report(5, ok && checked == 45, format!("{checked} lower-triangle entries match the recurrence, upper triangle zero: {ok}"));
}

fn criterion_6(g: &mut Gate) {
    let mut good = 0;
    let mut entries = 0usize;
    for t in 0..50 {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (0xabc0 + t));
        let d = 1 + (t as usize) % 3;
        let k = 6;
        let ring = rings()[(t as usize) % 3];
        let a = if t % 2 == 0 {
            random::invertible(&mut rng, d, k, ring)
        } else {
            random::non_invertible(&mut rng, d, k, ring)
        };
        let full = MonomialMatrix::riordan(&a);
        let mut same = true;
        for kp in 0..k {
            let lm = level_matrix(&a, kp).unwrap();
            for (r, m) in lm.basis().iter().enumerate() {
                for (c, n) in lm.basis().iter().enumerate() {
                    same &= lm.get(r, c) == full.entry(m, n).unwrap();
                    entries += 1;
                }
            }
        }
        good += usize::from(same);
    }
    g.report(6, good == 50, format!("{good}/50 elements agree on all {entries} shared entries for every k' < 6"));
}

/// Brute-force unit test of a ring element against small candidates.
fn has_small_inverse(c: &Elem, ring: Ring) -> bool {
    let candidates: Vec<Elem> = match ring {
        Ring::ModPrime(p) => (0..p as i64).map(|v| ring.from_i64(v)).collect(),
        Ring::Integer => (-10..=10).map(|v| ring.from_i64(v)).collect(),
        Ring::Rational => (-60..=60)
            .flat_map(|n| (1..=60).map(move |m| format!("{n}/{m}")))
            .map(|s| ring.parse_elem(&s).unwrap())
            .collect(),
    };
    candidates.iter().any(|y| (c * y).is_one())
}

fn criterion_7(g: &mut Gate) {
    let mut agree = 0;
    let mut units = 0;
    for t in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (0x7000 + t));
        let ring = rings()[(t as usize) % 3];
        let d = 1 + (t as usize) % 2;
        let f = random::laurent_any(&mut rng, d, 5, ring);
        let lead = f.coeff(f.vertex()).unwrap();
        let brute = !lead.is_zero() && has_small_inverse(&lead, ring);
        let claim = f.is_unit();
        let mut ok = claim == brute;
        if claim {
            units += 1;
            let inv = f.inverse().unwrap();
            ok &= f.mul(&inv).unwrap() == LaurentSeries::one(d, f.accuracy(), ring);
        } else {
            ok &= f.inverse().is_err();
        }
        agree += usize::from(ok);
    }
    let z = Ring::Integer;
    let s = |e: &[i32]| SignedMonomial::new(e.to_vec());
    let x1_plus_x2 = LaurentSeries::normalize(2, z, 4, [(s(&[1, 0]), z.one()), (s(&[0, 1]), z.one())]).unwrap();
    let rejected = !x1_plus_x2.is_unit()
        && x1_plus_x2.inverse().is_err()
        && expr::series("1/(x1+x2)", 2, 4, z).is_err();

    let mut cfg = CampaignConfig::new(Suite::Verdestar, vec![2], vec![], z, 100, SEED);
    cfg.box_radius = 3;
    cfg.conventions = Conventions::Both;
    let rep = campaign::run(&cfg).unwrap();
    let count = |c: Convention| rep.records.iter().filter(|r| r.by_convention.contains(&(c, true))).count();
    let certified: usize = rep
        .records
        .iter()
        .map(|r| r.verdict["checks"]["eq4"]["certified_pairs"].as_u64().unwrap_or(0) as usize)
        .sum();
    let total: usize = rep
        .records
        .iter()
        .map(|r| r.verdict["checks"]["eq4"]["total_pairs"].as_u64().unwrap_or(0) as usize)
        .sum();
    let (eq4, sec54) = (count(Convention::Eq4), count(Convention::Sec54));
    let bx = SignedBox::radius(2, 3);
    g.report(
        7,
        agree == 100 && rejected && eq4 == 100 && certified > 0,
        format!(
            "unit criterion {agree}/100 ({units} units); x1+x2 rejected: {rejected}; box {:?}..{:?}: eq4 order passes {eq4}/100, sec54 order passes {sec54}/100, {certified}/{total} pairs certified",
            bx.lo, bx.hi
        ),
    );
}

fn criterion_8(g: &mut Gate) {
    let golden: &[(&str, usize, &str)] = &[
        ("1", 1, "1"),
        ("x1", 1, "x1"),
        ("1/(1-x1)", 1, "(1 / (1 - x1))"),
        ("x1^2*x2 + 3", 2, "(((x1^2) * x2) + 3)"),
        ("1+2*x1^2", 1, "(1 + (2 * (x1^2)))"),
        ("1 - x1 - x2", 2, "((1 - x1) - x2)"),
        ("1/(1-x1-x2)", 2, "(1 / ((1 - x1) - x2))"),
        ("-x1", 1, "(-x1)"),
        ("-x1^2", 1, "(-(x1^2))"),
        ("(-x1)^2", 1, "((-x1)^2)"),
        ("2*-3", 1, "(2 * (-3))"),
        ("  x1 *\tx2 ", 2, "(x1 * x2)"),
        ("x1/x2/x3", 3, "((x1 / x2) / x3)"),
        ("((x1))", 1, "x1"),
        ("x1^0", 1, "(x1^0)"),
        ("12345678901234567890123", 1, "12345678901234567890123"),
        ("x3", 2, "error: variable x3 at byte 0 is out of range for 2 variables"),
        ("x1 x2", 2, "error: parse error at byte 3: expected an operator or end of input, found 'x'"),
        ("x1^-1", 1, "error: parse error at byte 3: negative exponents are not allowed"),
        ("x1^1.5", 1, "error: parse error at byte 4: exponent must be an integer"),
        ("(1+x1", 1, "error: parse error at byte 5: expected \")\", found end of input"),
        ("1 +", 1, "error: parse error at byte 3: expected a number, variable, \"(\" or \"-\", found end of input"),
        ("x0", 1, "error: variable x0 at byte 0 is out of range for 1 variables"),
        ("2^3^4", 1, "error: parse error at byte 3: expected an operator or end of input, found '^'"),
    ];
    let mut mismatches = Vec::new();
    for (src, d, want) in golden {
        let got = match expr::parse(src, *d) {
            Ok(e) => {
                let text = e.to_string();
                if expr::parse(&text, *d).as_ref() != Ok(&e) {
                    mismatches.push(format!("{src}: rendering does not reparse"));
                }
                text
            }
            Err(e) => format!("error: {e}"),
        };
        if got != *want {
            mismatches.push(format!("{src}: got {got:?}"));
        }
    }
    let z = Ring::Integer;
    let eval_errors = [
        (expr::series("1/(x1+x2)", 2, 3, z).map_err(|e| e.to_string()), "(x1 + x2) is not a unit"),
        (expr::series("2+x1", 1, 3, z).and_then(|s| s.inverse()).map_err(|_| "not a unit".to_string()), "not a unit"),
    ];
    for (got, want) in eval_errors {
        if got.as_ref().err().map(String::as_str) != Some(want) {
            mismatches.push(format!("eval error: got {got:?}"));
        }
    }
    // (1 - x1 - x2)^-1 = sum_n (x1 + x2)^n, expanded naively.
    let k = 5;
    let s = expr::series("1/(1-x1-x2)", 2, k, z).unwrap();
    let lin = Poly { k, terms: [(vec![1, 0], BigInt::from(1)), (vec![0, 1], BigInt::from(1))].into() };
    let mut geo = Poly::constant(2, k, 1);
    let mut pw = Poly::constant(2, k, 1);
    for _ in 0..k {
        pw = pw.mul(&lin);
        geo = geo.add(&pw);
    }
    let mut coeffs = 0;
    for m in riordan::enumerate_upto(2, k) {
        let c: BigInt = s.coeff(&m).unwrap().to_string().parse().unwrap();
        if c == geo.coeff(m.exps()) {
            coeffs += 1;
        }
    }
    g.report(
        8,
        mismatches.is_empty() && coeffs == 21,
        format!("{} golden expressions, mismatches {mismatches:?}; 1/(1-x1-x2) at k=5 matches {coeffs}/21 coefficients", golden.len()),
    );
}

fn criterion_9(g: &mut Gate) {
    let mut same = Vec::new();
    for (suite, dims, truncs) in [
        (Suite::Homomorphism, vec![1, 2, 3], vec![4]),
        (Suite::Group, vec![2], vec![4]),
        (Suite::Verdestar, vec![2], vec![]),
    ] {
        let mut cfg = CampaignConfig::new(suite, dims, truncs, Ring::Integer, 20, SEED);
        cfg.box_radius = 2;
        cfg.threads = Some(1);
        let one = campaign::run(&cfg).unwrap().to_jsonl();
        cfg.threads = Some(4);
        let four = campaign::run(&cfg).unwrap().to_jsonl();
        cfg.threads = Some(1);
        let again = campaign::run(&cfg).unwrap().to_jsonl();
        same.push((suite, one == four && one == again));
    }
    g.report(9, same.iter().all(|(_, s)| *s), format!("byte-identical reports at 1 and 4 threads: {same:?}"));
}

fn main() -> ExitCode {
    let mut g = Gate { failures: 0 };
    criterion_1(&mut g);
    criterion_2(&mut g);
    criterion_3(&mut g);
    criterion_4(&mut g);
    criterion_5(&mut g);
    criterion_6(&mut g);
    criterion_7(&mut g);
    criterion_8(&mut g);
    criterion_9(&mut g);
    if g.failures == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", g.failures);
        ExitCode::FAILURE
    }
}
