//! Randomized invariant suites behind `brauer verify`. Every suite is
//! deterministic for a given seed.

use brauer_core::brauer::{
    global_sum_check, inv_add, padic_invariant, quaternion_local_invariant, BrauerInvariant,
    Place, SPOT_CHECKS,
};
use brauer_core::crossed::{
    coboundary_from, cyclic_factor_set, inflate_cyclic, verify_cocycle, CyclicAlgebraSpec,
    GaloisData,
};
use brauer_core::extfield::{
    extended_valuation, make_extension, ramification_data, ramified_extension,
    unramified_extension, Automorphism, ExtensionField, LocalField,
};
use brauer_core::fields::{Field, Rational, Rationals};
use brauer_core::padic::{PadicContext, PadicNumber, Qp};
use brauer_core::Result;
use num_bigint::BigInt;
use num_integer::Integer;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SUITES: [&str; 5] = ["cocycle", "norms", "ramification", "invariants", "global"];

/// Pass/fail counts with the labels of failed checks.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SuiteReport {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            ..Self::default()
        }
    }

    pub fn check(&mut self, ok: bool, label: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            self.failures.push(label());
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn run_suite(name: &str, seed: u64, trials: usize) -> Result<SuiteReport> {
    match name {
        "cocycle" => cocycle_suite(seed, trials),
        "norms" => norms_suite(seed, trials),
        "ramification" => ramification_suite(seed, trials),
        "invariants" => invariants_suite(seed, trials),
        "global" => global_suite(seed, trials),
        _ => Err(brauer_core::Error::Precondition(format!("unknown suite {name}"))),
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Q(i)/Q with complex conjugation.
pub fn gaussian() -> GaloisData<Rationals> {
    let l = make_extension(Rationals, vec![q(1), q(0), q(1)]).expect("x^2 + 1 is irreducible");
    GaloisData::new(Automorphism::new(&l, vec![q(0), q(-1)]).expect("conjugation"))
        .expect("conjugation generates")
}

/// The unramified extension of degree f with its Frobenius.
pub fn unramified(p: u64, f: usize, precision: u32) -> Result<GaloisData<Qp>> {
    let ctx = PadicContext::new(p, precision)?;
    let (_, _, frob) = unramified_extension(&ctx, f)?;
    GaloisData::new(frob)
}

/// A nonzero element of Q(i) with small integer coordinates.
pub fn random_gaussian(rng: &mut impl Rng) -> Vec<Rational> {
    loop {
        let v = vec![q(rng.gen_range(-9..=9)), q(rng.gen_range(-9..=9))];
        if v.iter().any(|c| *c != q(0)) {
            return v;
        }
    }
}

/// A unit of W with integer coordinates below p^3. With `outside_base`, the
/// x-coordinate is a unit, so the element does not lie in Q_p.
pub fn random_unit(rng: &mut impl Rng, w: &ExtensionField<Qp>, outside_base: bool) -> Vec<PadicNumber> {
    let ctx = w.padic_context();
    let p = ctx.p() as i64;
    let bound = p * p * p;
    loop {
        let v: Vec<i64> = (0..w.degree()).map(|_| rng.gen_range(0..bound)).collect();
        let unit = v.iter().any(|c| c % p != 0);
        let moving = w.degree() > 1 && v[1] % p != 0;
        if unit && (!outside_base || moving) {
            return v.into_iter().map(|c| ctx.from_i64(c)).collect();
        }
    }
}

/// A p-adic unit in Q_p from a random integer.
pub fn random_base_unit(rng: &mut impl Rng, ctx: &PadicContext) -> PadicNumber {
    let p = ctx.p() as i64;
    loop {
        let c = rng.gen_range(1..p * p * p);
        if c % p != 0 {
            return ctx.from_i64(c);
        }
    }
}

/// A nonzero squarefree integer with |n| <= bound.
pub fn random_squarefree(rng: &mut impl Rng, bound: i64) -> i64 {
    loop {
        let n: i64 = rng.gen_range(-bound..=bound);
        if n != 0 && (2..=bound).all(|d| n % (d * d) != 0) {
            return n;
        }
    }
}

/// μ with μ_0 = 1 and random values elsewhere.
fn random_mu<F: Field>(
    g: &GaloisData<F>,
    mut draw: impl FnMut() -> Vec<F::Elem>,
) -> Vec<Vec<F::Elem>> {
    (0..g.order())
        .map(|i| if i == 0 { g.field().one() } else { draw() })
        .collect()
}

fn cocycle_checks<F: Field>(
    report: &mut SuiteReport,
    label: &str,
    g: &GaloisData<F>,
    rs: &[F::Elem],
    trials: usize,
    mut draw: impl FnMut(bool) -> Vec<F::Elem>,
    mut pick: impl FnMut(usize) -> (usize, usize),
) -> Result<()> {
    for r in rs {
        let gamma = cyclic_factor_set(r, g)?;
        report.check(verify_cocycle(&gamma), || format!("{label}: cyclic factor set {r:?}"));
    }
    for t in 0..trials {
        let mu = random_mu(g, || draw(false));
        let delta = coboundary_from(g, &mu)?;
        report.check(verify_cocycle(&delta), || format!("{label}: coboundary #{t}"));
    }
    for t in 0..trials {
        let base = cyclic_factor_set(&rs[t % rs.len()], g)?;
        let delta = coboundary_from(g, &random_mu(g, || draw(false)))?;
        let (i, j) = pick(g.order());
        let bad = base.pointwise_mul(&delta)?.perturbed(i, j, &draw(true))?;
        report.check(!verify_cocycle(&bad), || {
            format!("{label}: perturbation #{t} at ({i}, {j}) still a cocycle")
        });
    }
    Ok(())
}

/// Cyclic factor sets and coboundaries are cocycles; single-entry
/// perturbations by units outside the base are not.
pub fn cocycle_suite(seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("cocycle");
    let mut rng = seeded(seed);
    let g = gaussian();
    let rs = [q(-1), q(1), q(2), q(-3), q(5)];
    let mut rng2 = rng.clone();
    cocycle_checks(
        &mut report,
        "Q(i)/Q",
        &g,
        &rs,
        trials,
        |outside| loop {
            let v = random_gaussian(&mut rng);
            if !outside || v[1] != q(0) {
                return v;
            }
        },
        |n| (rng2.gen_range(0..n), rng2.gen_range(0..n)),
    )?;
    for (p, f) in [(5, 2), (3, 3), (3, 4), (2, 6)] {
        let g = unramified(p, f, 12)?;
        let ctx = g.field().padic_context().clone();
        let rs = [
            ctx.from_i64(p as i64),
            ctx.from_i64((p * p) as i64),
            random_base_unit(&mut rng, &ctx),
            random_base_unit(&mut rng, &ctx).mul(&ctx.from_i64(p as i64)),
        ];
        let w = g.field().clone();
        let mut rng_a = seeded(seed ^ (p << 8) ^ f as u64);
        let mut rng_b = seeded(seed ^ (p << 16) ^ f as u64);
        cocycle_checks(
            &mut report,
            &format!("W_{f}/Q_{p}"),
            &g,
            &rs,
            trials,
            |outside| random_unit(&mut rng_a, &w, outside),
            |n| (rng_b.gen_range(0..n), rng_b.gen_range(0..n)),
        )?;
    }
    Ok(report)
}

/// N(ab) = N(a) N(b), and the determinant norm equals the product of the
/// Galois conjugates.
pub fn norms_suite(seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("norms");
    let mut rng = seeded(seed);
    let g = gaussian();
    let l = g.field();
    for t in 0..trials {
        let (a, b) = (random_gaussian(&mut rng), random_gaussian(&mut rng));
        let lhs = l.norm(&l.mul(&a, &b));
        report.check(lhs == l.norm(&a) * l.norm(&b), || format!("Q(i) multiplicativity #{t}"));
        report.check(g.conjugate_product(&a) == l.from_base(&l.norm(&a)), || {
            format!("Q(i) conjugate product #{t}")
        });
    }
    let n = 16;
    let g = unramified(5, 2, n)?;
    let w = g.field();
    for t in 0..trials {
        let (a, b) = (random_unit(&mut rng, w, false), random_unit(&mut rng, w, false));
        let lhs = w.norm(&w.mul(&a, &b));
        let rhs = w.norm(&a).mul(&w.norm(&b));
        report.check(lhs.eq_mod(&rhs, n as i64), || format!("W_2/Q_5 multiplicativity #{t}"));
        let conj = g.conjugate_product(&a);
        let det = w.from_base(&w.norm(&a));
        let agree = conj.iter().zip(&det).all(|(x, y)| x.eq_mod(y, n as i64));
        report.check(agree, || format!("W_2/Q_5 conjugate product #{t}"));
    }
    Ok(report)
}

/// e f = n on certified towers and valuations land in (1/e)Z, with the
/// sampled values generating it.
pub fn ramification_suite(seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("ramification");
    let mut rng = seeded(seed);

    let ctx5 = PadicContext::new(5, 16)?;
    let qp5 = Qp::new(&ctx5);
    let (l, data) = ramified_extension(&qp5, vec![ctx5.from_i64(-5), ctx5.zero(), ctx5.one()])?;
    let v = extended_valuation(&l, &data.uniformizer)?;
    report.check(v == Some(Rational::new(1.into(), 2.into())), || {
        format!("v(sqrt 5) = {v:?}")
    });
    report.check(ramification_data(&l)? == (2, 1), || "Q_5(sqrt 5) has (e, f) = (2, 1)".into());

    let ctx3 = PadicContext::new(3, 16)?;
    let (w, _, _) = unramified_extension(&ctx3, 2)?;
    let three = w.from_i64(3);
    let g = vec![w.neg(&three), w.zero(), w.zero(), w.one()];
    let (tower, tower_data) = ramified_extension(&w, g)?;
    let (e, f) = ramification_data(&tower)?;
    report.check((e, f) == (3, 2) && e * f == tower.absolute_degree(), || {
        format!("degree 6 tower reports ({e}, {f})")
    });
    let vpi = extended_valuation(&tower, &tower_data.uniformizer)?;
    report.check(vpi == Some(Rational::new(1.into(), 3.into())), || {
        format!("tower uniformizer has valuation {vpi:?}")
    });
    let mut numerators = Vec::new();
    for t in 0..trials {
        // odd samples have constant term in 3W, so their valuation is positive
        let scale = if t % 2 == 1 { 3 } else { 1 };
        let a: Vec<Vec<PadicNumber>> = (0..3)
            .map(|k| {
                (0..2)
                    .map(|_| {
                        let c = rng.gen_range(-40..=40);
                        ctx3.from_i64(if k == 0 { c * scale } else { c })
                    })
                    .collect()
            })
            .collect();
        if tower.is_zero(&a) {
            continue;
        }
        let v = extended_valuation(&tower, &a)?.expect("nonzero");
        let scaled = &v * Rational::from_integer((e as i64).into());
        report.check(scaled.is_integer(), || format!("valuation {v} of sample #{t} not in (1/e)Z"));
        numerators.push(scaled.to_integer());
    }
    let g = numerators.iter().fold(BigInt::from(0), |acc, x| acc.gcd(x));
    report.check(g == BigInt::from(1), || {
        format!("sampled valuations generate (1/{e})Z only up to {g}")
    });
    Ok(report)
}

/// The unramified invariant map and its compatibility with inflation.
pub fn invariants_suite(seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("invariants");
    invariant_map_checks(&mut report, seed, trials)?;
    inflation_checks(&mut report, seed)?;
    Ok(report)
}

/// Over Q_5 with f in {2, 3, 4}: units are trivial, p^s u maps to s/f, the
/// map is additive and constant on norm cosets, and its image is cyclic of
/// order f.
pub fn invariant_map_checks(report: &mut SuiteReport, seed: u64, trials: usize) -> Result<()> {
    let mut rng = seeded(seed);
    for f in [2usize, 3, 4] {
        let g = unramified(5, f, 12)?;
        let ctx = g.field().padic_context().clone();
        let inv = |r: PadicNumber| -> Result<BrauerInvariant> {
            padic_invariant(&CyclicAlgebraSpec::new(g.clone(), r)?)
        };
        let fi = f as u64;
        for t in 0..trials {
            let u = random_base_unit(&mut rng, &ctx);
            report.check(inv(u.clone())?.is_zero(), || format!("f={f}: unit #{t}"));
            let s: i64 = rng.gen_range(-6..=12);
            let r = u.mul(&ctx.p_power(s));
            let want = BrauerInvariant::new(s, fi)?;
            report.check(inv(r.clone())? == want, || format!("f={f}: p^{s} u"));
            let s2: i64 = rng.gen_range(0..=8);
            let r2 = random_base_unit(&mut rng, &ctx).mul(&ctx.p_power(s2));
            report.check(
                inv(r.mul(&r2))? == inv_add(inv(r.clone())?, inv(r2)?),
                || format!("f={f}: additivity #{t}"),
            );
            let w = g.field();
            let mut x = random_unit(&mut rng, w, false);
            // move off the units so the coset shift has valuation too
            x = w.mul(&x, &w.from_base(&ctx.p_power(rng.gen_range(0..3))));
            let n = w.norm(&x);
            report.check(inv(r.mul(&n))? == inv(r)?, || format!("f={f}: norm coset #{t}"));
        }
        let image: Vec<BrauerInvariant> = (0..f as i64)
            .map(|s| inv(ctx.p_power(s)))
            .collect::<Result<_>>()?;
        let generator = image.get(1).copied().unwrap_or(BrauerInvariant::ZERO);
        let cyclic = (0..f).all(|s| {
            image[s] == (0..s).fold(BrauerInvariant::ZERO, |acc, _| inv_add(acc, generator))
        });
        let mut distinct = image.clone();
        distinct.sort();
        distinct.dedup();
        report.check(cyclic && distinct.len() == f && generator.den() == fi, || {
            format!("f={f}: image {image:?} is not cyclic of order {f}")
        });
    }
    Ok(())
}

/// The invariant of (σ, W_f, r) is unchanged by inflation to W_mf, for
/// r in {p, p^2, u p} over Q_3 and Q_5.
pub fn inflation_checks(report: &mut SuiteReport, seed: u64) -> Result<()> {
    let mut rng = seeded(seed ^ 0x1f1a);
    for p in [3u64, 5] {
        for (f, mf) in [(2usize, 4usize), (2, 6), (3, 6)] {
            let small = unramified(p, f, 10)?;
            let big = unramified(p, mf, 10)?;
            let ctx = small.field().padic_context().clone();
            let pp = ctx.from_i64(p as i64);
            let u = random_base_unit(&mut rng, &ctx);
            for r in [pp.clone(), pp.mul(&pp), u.mul(&pp)] {
                let spec = CyclicAlgebraSpec::new(small.clone(), r)?;
                let inflated = inflate_cyclic(&spec, &big)?;
                let (a, b) = (padic_invariant(&spec)?, padic_invariant(&inflated)?);
                report.check(a == b, || format!("Q_{p} ({f}, {mf}): {a} vs {b}"));
            }
        }
    }
    Ok(())
}

/// Quaternion reciprocity: the local invariants sum to zero and vanish at
/// spot-checked primes outside 2ab.
pub fn global_suite(seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("global");
    let mut rng = seeded(seed);
    let mut pairs = vec![(-1, -1), (-1, -5), (2, -3), (-2, -7)];
    for _ in 0..trials {
        pairs.push((random_squarefree(&mut rng, 50), random_squarefree(&mut rng, 50)));
    }
    for (a, b) in pairs {
        let c = global_sum_check(&q(a), &q(b), 16)?;
        report.check(c.holds() && c.spot_checks.len() == SPOT_CHECKS, || {
            format!("({a}, {b}): sum {} with spot checks {:?}", c.sum, c.spot_checks)
        });
    }
    let h = quaternion_local_invariant(&q(-1), &q(-1), Place::Real, 16)?;
    report.check(h == BrauerInvariant::HALF, || "Hamilton at the real place".into());
    Ok(report)
}
