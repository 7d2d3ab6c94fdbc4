//! Named identity checks, grouped into suites, for `sticks verify`.
//!
//! Each check sweeps a fixed grid and reports how many cases it tried and the first
//! mismatch it saw. Exact checks compare rationals; the Monte Carlo checks use a 4σ band.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closed_form::{
    pa_pickup, pn_broken, pn_exponential, pn_pickup, pn_pickup_quadrilateral, pn_pickup_truncated,
    pr_pickup, ExactProb,
};
use crate::constraints::{
    check_max_min_identity, e_vector, m_constants, m_constants_via_jacobian, max_length_form,
    random_feasible_prefix, s_constants, ConstraintSystem, Model,
};
use crate::error::{Error, Result};
use crate::montecarlo::{
    all_polygon, estimate, no_polygon, sample_lengths, trial_rng, DistributionSpec, EventKind,
    EventSpec,
};
use crate::oracle::{
    r_vector, symbolic_pn_pickup, symbolic_pn_truncated, vanishes_at, SymbolicIntegrator,
};
use crate::report::{CheckResult, VerifyReport};
use crate::sequences::{fib, fib_prefix_sum, t_value, StepFibTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Sequences,
    Constraints,
    ClosedForm,
    MonteCarlo,
    Oracle,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = [
        "sequences",
        "constraints",
        "closed_form",
        "montecarlo",
        "oracle",
        "all",
    ];

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = match self {
            Suite::Sequences => 0,
            Suite::Constraints => 1,
            Suite::ClosedForm => 2,
            Suite::MonteCarlo => 3,
            Suite::Oracle => 4,
            Suite::All => 5,
        };
        f.write_str(Self::NAMES[i])
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sequences" => Suite::Sequences,
            "constraints" => Suite::Constraints,
            "closed_form" => Suite::ClosedForm,
            "montecarlo" => Suite::MonteCarlo,
            "oracle" => Suite::Oracle,
            "all" => Suite::All,
            _ => {
                return Err(Error::Parse(format!(
                    "unknown suite {s:?}; expected one of {}",
                    Self::NAMES.join(", ")
                )))
            }
        })
    }
}

/// Knobs for the randomized checks.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            trials: 200_000,
            seed: 42,
            workers: crate::montecarlo::default_workers(),
        }
    }
}

#[derive(Default)]
struct Tally {
    cases: u64,
    failures: u64,
    first: Option<String>,
}

impl Tally {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            self.first.get_or_insert_with(what);
        }
    }

    fn expect_eq<T: PartialEq + fmt::Display>(
        &mut self,
        got: T,
        want: T,
        at: impl FnOnce() -> String,
    ) {
        let ok = got == want;
        self.expect(ok, || format!("{}: got {got}, want {want}", at()));
    }
}

type CheckFn = fn(&VerifyConfig, &mut Tally) -> Result<()>;

struct Check {
    name: &'static str,
    suite: Suite,
    run: CheckFn,
}

const CHECKS: &[Check] = &[
    Check {
        name: "t_equals_prefix_sum",
        suite: Suite::Sequences,
        run: t_equals_prefix_sum,
    },
    Check {
        name: "doubling_window",
        suite: Suite::Sequences,
        run: doubling_window,
    },
    Check {
        name: "prefix_sum_difference",
        suite: Suite::Sequences,
        run: prefix_sum_difference,
    },
    Check {
        name: "window_sum_corollary",
        suite: Suite::Sequences,
        run: window_sum_corollary,
    },
    Check {
        name: "m_triple_derivation",
        suite: Suite::Constraints,
        run: m_triple_derivation,
    },
    Check {
        name: "e_vector_head_is_fib",
        suite: Suite::Constraints,
        run: e_vector_head_is_fib,
    },
    Check {
        name: "triangle_max_forms",
        suite: Suite::Constraints,
        run: triangle_max_forms,
    },
    Check {
        name: "triangle_s_prefix_sums",
        suite: Suite::Constraints,
        run: triangle_s_prefix_sums,
    },
    Check {
        name: "max_min_identity",
        suite: Suite::Constraints,
        run: max_min_identity,
    },
    Check {
        name: "m_monotone",
        suite: Suite::Constraints,
        run: m_monotone,
    },
    Check {
        name: "quadrilateral_form",
        suite: Suite::ClosedForm,
        run: quadrilateral_form,
    },
    Check {
        name: "triangle_fib_product",
        suite: Suite::ClosedForm,
        run: triangle_fib_product,
    },
    Check {
        name: "full_window_reductions",
        suite: Suite::ClosedForm,
        run: full_window_reductions,
    },
    Check {
        name: "exponential_equals_broken",
        suite: Suite::ClosedForm,
        run: exponential_equals_broken,
    },
    Check {
        name: "pa_complement",
        suite: Suite::ClosedForm,
        run: pa_complement,
    },
    Check {
        name: "truncated_monotone",
        suite: Suite::ClosedForm,
        run: truncated_monotone,
    },
    Check {
        name: "unit_interval_lowest_terms",
        suite: Suite::ClosedForm,
        run: unit_interval_lowest_terms,
    },
    Check {
        name: "predicate_scale_invariance",
        suite: Suite::MonteCarlo,
        run: predicate_scale_invariance,
    },
    Check {
        name: "mutual_exclusion",
        suite: Suite::MonteCarlo,
        run: mutual_exclusion,
    },
    Check {
        name: "worker_determinism",
        suite: Suite::MonteCarlo,
        run: worker_determinism,
    },
    Check {
        name: "rate_invariance",
        suite: Suite::MonteCarlo,
        run: rate_invariance,
    },
    Check {
        name: "tie_rule_boundary",
        suite: Suite::MonteCarlo,
        run: tie_rule_boundary,
    },
    Check {
        name: "simulation_concordance",
        suite: Suite::MonteCarlo,
        run: simulation_concordance,
    },
    Check {
        name: "symbolic_matches_closed_form",
        suite: Suite::Oracle,
        run: symbolic_matches_closed_form,
    },
    Check {
        name: "symbolic_truncated",
        suite: Suite::Oracle,
        run: symbolic_truncated,
    },
    Check {
        name: "r_vector_closed_forms",
        suite: Suite::Oracle,
        run: r_vector_closed_forms,
    },
    Check {
        name: "integrands_vanish",
        suite: Suite::Oracle,
        run: integrands_vanish,
    },
];

/// Names of the checks a suite runs, in order.
pub fn check_names(suite: Suite) -> Vec<&'static str> {
    CHECKS
        .iter()
        .filter(|c| suite.includes(c.suite))
        .map(|c| c.name)
        .collect()
}

/// Runs one suite (or all of them).
pub fn run(suite: Suite, config: &VerifyConfig) -> VerifyReport {
    let results = CHECKS
        .iter()
        .filter(|c| suite.includes(c.suite))
        .map(|c| {
            let mut tally = Tally::default();
            let outcome = (c.run)(config, &mut tally);
            let (passed, detail) = match (outcome, tally.first) {
                (Err(e), _) => (false, format!("error: {e}")),
                (Ok(()), Some(first)) => (
                    false,
                    format!(
                        "{} of {} failed; first: {first}",
                        tally.failures, tally.cases
                    ),
                ),
                (Ok(()), None) => (tally.cases > 0, format!("{} cases", tally.cases)),
            };
            CheckResult {
                name: c.name.into(),
                suite: c.suite.to_string(),
                passed,
                cases: tally.cases,
                detail,
            }
        })
        .collect();
    VerifyReport::new(&suite.to_string(), results)
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn t_equals_prefix_sum(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for p in 2..=8 {
        for k in 1..=40 {
            t.expect_eq(t_value(p, k)?, fib_prefix_sum(p, k)?, || {
                format!("p={p} k={k}")
            });
        }
    }
    Ok(())
}

fn doubling_window(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for p in 2..=10 {
        let table = StepFibTable::new(p)?;
        for i in 2..=p as i64 {
            t.expect_eq(table.fib(i + 1)?, table.fib(i)? * 2, || {
                format!("p={p} i={i}")
            });
        }
    }
    Ok(())
}

fn prefix_sum_difference(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for p in 2..=8 {
        let table = StepFibTable::new(p)?;
        for i in 2..=40 {
            let diff = table.prefix_sum(i)? - table.prefix_sum(i - 1)?;
            t.expect_eq(diff, table.fib(i)?, || format!("p={p} i={i}"));
        }
    }
    Ok(())
}

fn window_sum_corollary(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for p in 3..=12 {
        let table = StepFibTable::new(p)?;
        for q in 3..=p as i64 {
            let mut value = table.fib(q + 1)?;
            for j in 1..=q - 2 {
                value -= BigInt::from(j) * table.fib(q - j)?;
            }
            t.expect_eq(value, BigInt::from(q), || format!("p={p} q={q}"));
        }
    }
    Ok(())
}

fn m_triple_derivation(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for p in 2..=6 {
        for n in p + 1..=30 {
            let m = m_constants(p, n)?;
            let jac = m_constants_via_jacobian(p, n)?;
            let system = ConstraintSystem::build(p, n, Model::Pickup)?;
            t.expect(m == jac, || {
                format!("Jacobian route differs at p={p} n={n}")
            });
            t.expect(m == system.max_denominators, || {
                format!("e-vector route differs at p={p} n={n}")
            });
        }
    }
    Ok(())
}

fn e_vector_head_is_fib(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for p in 2..=6 {
        for k in 1..=30 {
            t.expect_eq(e_vector(p, k)?[0].clone(), fib(p, k)?, || {
                format!("p={p} k={k}")
            });
        }
    }
    Ok(())
}

fn triangle_max_forms(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for n in 3..=20usize {
        for i in 2..n {
            let (den, form) = max_length_form(2, n, i, Model::Pickup)?;
            let k = (n - i) as i64;
            let mut want = vec![BigInt::zero(); i - 1];
            want[i - 2] = fib(2, k)?;
            t.expect(
                den == fib(2, k + 1)? && form.coeffs() == want.as_slice(),
                || format!("n={n} i={i}: {den}, {form}"),
            );
        }
    }
    Ok(())
}

fn triangle_s_prefix_sums(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for n in 3..=20usize {
        let s = s_constants(2, n)?;
        for i in 1..n {
            t.expect_eq(
                s[i - 1].clone(),
                fib_prefix_sum(2, (n - i + 1) as i64)?,
                || format!("n={n} i={i}"),
            );
        }
    }
    Ok(())
}

fn max_min_identity(config: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for p in 2..=4 {
        for n in p + 1..=8 {
            let system = ConstraintSystem::build(p, n, Model::Pickup)?;
            for _ in 0..200 {
                let len = rng.random_range(1..n);
                let prefix = random_feasible_prefix(&system, len, 97, &mut rng)?;
                t.expect(check_max_min_identity(p, n, &prefix)?, || {
                    let shown: Vec<String> = prefix.iter().map(ToString::to_string).collect();
                    format!("p={p} n={n} prefix ({})", shown.join(", "))
                });
            }
        }
    }
    Ok(())
}

fn m_monotone(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for p in 2..=6 {
        for n in p + 1..=30 {
            let m = m_constants(p, n)?;
            let ok =
                m.windows(2).all(|w| w[0] >= w[1]) && m.last().is_some_and(|x| x >= &BigInt::one());
            t.expect(ok, || format!("p={p} n={n}"));
        }
    }
    Ok(())
}

fn quadrilateral_form(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for n in 4..=20 {
        t.expect_eq(pn_pickup(3, n)?, pn_pickup_quadrilateral(n)?, || {
            format!("n={n}")
        });
    }
    Ok(())
}

fn triangle_fib_product(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for n in 3..=20usize {
        let product: BigInt = (1..=n as i64)
            .map(|i| fib(2, i))
            .product::<Result<BigInt>>()?;
        let value = pn_pickup(2, n)?.into_inner() * BigRational::from_integer(product);
        t.expect(value.is_one(), || format!("n={n}: {value}"));
    }
    Ok(())
}

fn full_window_reductions(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for n in 3..=12usize {
        let p = n - 1;
        let pickup = BigRational::new(BigInt::one(), factorial(n - 1));
        t.expect_eq(pn_pickup(p, n)?.into_inner(), pickup, || {
            format!("pickup n={n}")
        });
        let broken = BigRational::new(BigInt::from(n), BigInt::one() << (n - 1));
        t.expect_eq(pn_broken(p, n)?.into_inner(), broken, || {
            format!("broken n={n}")
        });
        let table = StepFibTable::new(p)?;
        for i in 2..=n as i64 {
            let mut value = table.fib(i)?;
            for j in 1..=i - 3 {
                value -= BigInt::from(j) * table.fib(i - j - 1)?;
            }
            t.expect_eq(value, BigInt::from(i - 1), || {
                format!("scalar identity p={p} i={i}")
            });
        }
    }
    Ok(())
}

fn exponential_equals_broken(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for p in 2..=5 {
        for n in p + 1..=12 {
            t.expect_eq(pn_exponential(p, n)?, pn_broken(p, n)?, || {
                format!("p={p} n={n}")
            });
        }
    }
    Ok(())
}

fn pa_complement(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for p in 2..=3 {
        t.expect_eq(
            pa_pickup(p, p + 1)?,
            pn_pickup(p, p + 1)?.complement(),
            || format!("p={p}"),
        );
    }
    Ok(())
}

fn truncated_monotone(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    const STEPS: i64 = 24;
    for p in 2..=4 {
        for n in p + 1..=8 {
            let m1 = m_constants(p, n)?[0].clone();
            let mut prev: Option<ExactProb> = None;
            for k in 0..=STEPS {
                let a = BigRational::new(BigInt::from(k), BigInt::from(STEPS) * &m1);
                let v = pn_pickup_truncated(p, n, &a)?;
                if let Some(prev) = &prev {
                    t.expect(&v <= prev, || format!("p={p} n={n} increases at a={a}"));
                }
                prev = Some(v);
            }
            t.expect(prev == Some(ExactProb::zero()), || {
                format!("p={p} n={n} nonzero at 1/m_1")
            });
        }
    }
    Ok(())
}

fn unit_interval_lowest_terms(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let mut values = Vec::new();
    for p in 2..=6 {
        for n in 1..=16 {
            values.push(pn_pickup(p, n)?);
            values.push(pn_broken(p, n)?);
            values.push(pn_exponential(p, n)?);
            values.push(pn_pickup_truncated(p, n, &ratio(1, 50))?);
        }
        values.push(pr_pickup(p)?);
    }
    for p in 2..=3 {
        for n in 1..=16 {
            values.push(pa_pickup(p, n)?);
        }
    }
    for v in values {
        let (num, den) = (v.numer(), v.denom());
        let ok = num.gcd(den).is_one() && !num.is_negative() && num <= den;
        t.expect(ok, || format!("{v}"));
    }
    Ok(())
}

const DISTRIBUTIONS: [DistributionSpec; 4] = [
    DistributionSpec::Uniform01,
    DistributionSpec::UniformTruncated { a: 0.1 },
    DistributionSpec::Exponential { rate: 2.0 },
    DistributionSpec::BrokenStick,
];

fn sorted_sample(dist: DistributionSpec, n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
    let mut v = sample_lengths(dist, n, rng)?;
    v.sort_unstable_by(f64::total_cmp);
    Ok(v)
}

fn predicate_scale_invariance(config: &VerifyConfig, t: &mut Tally) -> Result<()> {
    // powers of two scale without rounding, so every comparison is preserved exactly
    let mut rng = trial_rng(config.seed, 1);
    for dist in DISTRIBUTIONS {
        for _ in 0..500 {
            let p = rng.random_range(2..=5);
            let n = rng.random_range(p + 1..=10);
            let v = sorted_sample(dist, n, &mut rng)?;
            let c = 2f64.powi(rng.random_range(-20..=20));
            let scaled: Vec<f64> = v.iter().map(|x| x * c).collect();
            let same = no_polygon(&v, p)? == no_polygon(&scaled, p)?
                && all_polygon(&v, p)? == all_polygon(&scaled, p)?;
            t.expect(same, || format!("{dist} p={p} scale {c}: {v:?}"));
        }
    }
    Ok(())
}

fn mutual_exclusion(config: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let mut rng = trial_rng(config.seed, 2);
    for dist in DISTRIBUTIONS {
        for _ in 0..2000 {
            let p = rng.random_range(2..=4);
            let n = rng.random_range(p + 1..=8);
            let v = sorted_sample(dist, n, &mut rng)?;
            t.expect(!(no_polygon(&v, p)? && all_polygon(&v, p)?), || {
                format!("{dist} p={p}: {v:?}")
            });
        }
    }
    Ok(())
}

fn worker_determinism(config: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let event = EventSpec::new(EventKind::NoPolygon, 2)?;
    let base = estimate(
        event,
        DistributionSpec::Uniform01,
        5,
        config.trials,
        config.seed,
        1,
    )?;
    for workers in [2, 4, 8, config.workers] {
        let other = estimate(
            event,
            DistributionSpec::Uniform01,
            5,
            config.trials,
            config.seed,
            workers,
        )?;
        t.expect(other == base, || {
            format!(
                "workers={workers}: {} vs {}",
                other.successes, base.successes
            )
        });
    }
    Ok(())
}

fn rate_invariance(config: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for (p, n) in [(2, 4), (3, 5)] {
        let event = EventSpec::new(EventKind::NoPolygon, p)?;
        let run = |rate, seed| {
            estimate(
                event,
                DistributionSpec::Exponential { rate },
                n,
                config.trials,
                seed,
                config.workers,
            )
        };
        let a = run(1.0, config.seed)?;
        let b = run(5.0, config.seed.wrapping_add(1))?;
        let joint = (a.std_err.powi(2) + b.std_err.powi(2)).sqrt();
        t.expect((a.p_hat - b.p_hat).abs() <= 4.0 * joint, || {
            format!("p={p} n={n}: {} vs {} (joint σ {joint})", a.p_hat, b.p_hat)
        });
    }
    Ok(())
}

fn tie_rule_boundary(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for p in 2..=5 {
        for n in p + 1..=12 {
            // every stick at its minimum given l_1 = 1: each window sum equals the next length
            let mut v = vec![1.0f64; n];
            for i in p..n {
                v[i] = v[i - p..i].iter().sum();
            }
            for shift in [-30, 0, 30] {
                let scaled: Vec<f64> = v.iter().map(|x| x * 2f64.powi(shift)).collect();
                t.expect(no_polygon(&scaled, p)?, || {
                    format!("p={p} n={n} shift={shift}: boundary counted as polygon")
                });
                t.expect(!all_polygon(&scaled, p)?, || {
                    format!("p={p} n={n} shift={shift}: all_polygon on boundary")
                });
            }
            let mut shorter = v.clone();
            shorter[n - 1] -= 0.5;
            t.expect(!no_polygon(&shorter, p)?, || {
                format!("p={p} n={n}: shortened top stick")
            });
        }
    }
    Ok(())
}

fn simulation_concordance(config: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let cases = [
        (
            EventKind::NoPolygon,
            2,
            DistributionSpec::Uniform01,
            4,
            pn_pickup(2, 4)?,
        ),
        (
            EventKind::NoPolygon,
            2,
            DistributionSpec::BrokenStick,
            3,
            pn_broken(2, 3)?,
        ),
        (
            EventKind::AllPolygon,
            2,
            DistributionSpec::Uniform01,
            5,
            pa_pickup(2, 5)?,
        ),
        (
            EventKind::RandomSubsetPolygon,
            2,
            DistributionSpec::Uniform01,
            6,
            pr_pickup(2)?,
        ),
    ];
    for (k, (kind, p, dist, n, exact)) in cases.into_iter().enumerate() {
        let est = estimate(
            EventSpec::new(kind, p)?,
            dist,
            n,
            config.trials,
            config.seed.wrapping_add(k as u64),
            config.workers,
        )?;
        t.expect(est.within_sigma(exact.to_f64(), 4.0), || {
            format!(
                "{kind:?} {dist} n={n}: p_hat {} vs {exact} (σ {})",
                est.p_hat, est.std_err
            )
        });
    }
    Ok(())
}

fn symbolic_grid() -> Vec<(usize, usize)> {
    let mut grid: Vec<(usize, usize)> = (2..=3)
        .flat_map(|p| (p + 1..=7).map(move |n| (p, n)))
        .collect();
    grid.extend([(4, 5), (4, 6)]);
    grid
}

fn symbolic_matches_closed_form(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for (p, n) in symbolic_grid() {
        t.expect_eq(symbolic_pn_pickup(p, n)?, pn_pickup(p, n)?, || {
            format!("p={p} n={n}")
        });
    }
    Ok(())
}

fn symbolic_truncated(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    t.expect_eq(
        symbolic_pn_truncated(2, 3, &ratio(1, 4))?,
        ExactProb::from_ratio(4, 27)?,
        || "p=2 n=3 a=1/4".into(),
    );
    for (p, n) in [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5)] {
        for a in [
            ratio(0, 1),
            ratio(1, 10),
            ratio(1, 7),
            ratio(1, 4),
            ratio(1, 2),
        ] {
            t.expect_eq(
                symbolic_pn_truncated(p, n, &a)?,
                pn_pickup_truncated(p, n, &a)?,
                || format!("p={p} n={n} a={a}"),
            );
        }
    }
    Ok(())
}

fn r_vector_closed_forms(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for p in 2..=6usize {
        let table = StepFibTable::new(p)?;
        for l in 1..=30usize {
            let r = r_vector(p, l)?;
            let li = l as i64;
            t.expect_eq(r.entry(p).clone(), table.fib(li)?, || {
                format!("R_p p={p} l={l}")
            });
            t.expect_eq(r.entry(p - 1).clone(), table.fib(li + 1)?, || {
                format!("R_(p-1) p={p} l={l}")
            });
            for i in 1..=p.saturating_sub(2) {
                let mut want = table.fib(li + (p - i) as i64)?;
                for j in 1..=(p - i - 1) {
                    want -= BigInt::from(p - i - j) * table.fib(li + j as i64 - 1)?;
                }
                t.expect_eq(r.entry(i).clone(), want, || format!("R_{i} p={p} l={l}"));
            }
        }
    }
    Ok(())
}

fn integrands_vanish(_: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let integrator = SymbolicIntegrator::default();
    for (p, n) in symbolic_grid() {
        let trace = integrator.trace(p, n)?;
        for (k, poly) in trace.iter().enumerate().take(n - 1) {
            let j = n - k - 1;
            let bound = integrator.upper_bound(p, n, j)?;
            t.expect(vanishes_at(poly, j - 1, &bound), || {
                format!("p={p} n={n} at l_{j} max")
            });
        }
    }
    Ok(())
}
