use std::fs;
use std::path::Path;

use anyhow::Context;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use symbias::arith::{format_rational, rat};
use symbias::io::{self, Document, LpDocument};
use symbias::momentlp::{min_tv_to_kwise, optimize, vertex_enumerate};
use symbias::realroots::{check_maclaurin_bound, elem_sym, is_real_rooted};
use symbias::symdist::max_valid_lambda;
use symbias::verify::{self, ClaimParams};
use symbias::{
    grid, AttainableTuple, Claim, Config, Format, KrawtchoukTable, Poly, RealTuple, SymmetricDist, SymmetricTest,
    VerdictReport,
};

use crate::args::*;

pub enum Failure {
    Usage(String),
    Domain(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.into())
    }
}

pub struct Output {
    pub text: String,
    pub success: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, success: true }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> Res<T> {
    Err(Failure::Usage(msg.into()))
}

fn need<T>(v: Option<T>, flag: &str, what: &str) -> Res<T> {
    match v {
        Some(v) => Ok(v),
        None => usage(format!("{what} requires --{flag}")),
    }
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn pretty(v: &Value) -> String {
    line(serde_json::to_string_pretty(v).expect("values serialize"))
}

fn read_doc(path: &Path) -> Res<Document> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).context("reading stdin")?
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Ok(Document::from_json(&text).with_context(|| format!("parsing {}", path.display()))?)
}

struct Ctx {
    config: Config,
}

impl Ctx {
    fn check_n(&self, n: usize) -> Res<()> {
        if n > self.config.max_n {
            return Err(symbias::Error::DimensionTooLarge { n, max: self.config.max_n }.into());
        }
        Ok(())
    }

    fn dist(&self, path: &Path) -> Res<SymmetricDist> {
        let doc = read_doc(path)?;
        self.check_n(doc.n)?;
        Ok(doc.to_dist()?)
    }

    fn test(&self, path: &Path) -> Res<SymmetricTest> {
        let doc = read_doc(path)?;
        self.check_n(doc.n)?;
        Ok(doc.to_test()?)
    }
}

pub fn dispatch(cli: Cli) -> Res<Output> {
    let config = Config { max_n: cli.max_n, vertex_budget: cli.vertex_budget, ..Config::default() };
    if let Err(e) = config.validate() {
        return usage(e.to_string());
    }
    let ctx = Ctx { config };
    match cli.command {
        Command::Kraw(c) => kraw(&ctx, c),
        Command::Dist(c) => dist(&ctx, c),
        Command::Test(c) => test(&ctx, c),
        Command::Lp(c) => lp(&ctx, c),
        Command::Poly(c) => poly(c),
        Command::Verify(v) => verify_cmd(&ctx, v),
    }
}

fn kraw(ctx: &Ctx, cmd: Kraw) -> Res<Output> {
    match cmd {
        Kraw::Eval { n, ell, t, w } => {
            let table = KrawtchoukTable::with_cap(n, ctx.config.max_n)?;
            let v = match (t, w) {
                (Some(t), None) => table.get(ell, t)?,
                (None, Some(w)) => table.eval_standard(ell, w)?,
                _ => return usage("kraw eval requires exactly one of --t or --w"),
            };
            Ok(Output::ok(line(v)))
        }
        Kraw::Sweep { n, bounds, slack } => {
            let table = KrawtchoukTable::with_cap(n, ctx.config.max_n)?;
            let cells: Vec<(Bound, usize, i64)> = bounds
                .iter()
                .flat_map(|&b| (1..=n).flat_map(move |l| grid::weight_sums(n).map(move |t| (b, l, t))))
                .collect();
            let rows: Vec<Option<Vec<String>>> =
                cells.par_iter().map(|&(b, l, t)| sweep_row(&table, b, l, t, slack)).collect::<symbias::Result<_>>()?;
            let rows: Vec<Vec<String>> = rows.into_iter().flatten().collect();
            let all_pass = rows.iter().all(|r| r[7] == "true");
            let header = ["bound", "n", "ell", "t", "value", "lhs", "rhs", "pass"];
            Ok(Output { text: io::rows_to_csv(&header, &rows)?, success: all_pass })
        }
    }
}

/// `None` for cells outside the bound's stated range.
fn sweep_row(table: &KrawtchoukTable, b: Bound, l: usize, t: i64, slack: f64) -> symbias::Result<Option<Vec<String>>> {
    let n = table.n();
    let value = table.get(l, t)?.to_string();
    let (name, lhs, rhs, pass) = match b {
        Bound::Upper => {
            let c = table.check_upper_bound(l, t)?;
            ("upper", format_rational(&c.lhs), format_rational(&c.rhs), c.holds)
        }
        Bound::Lower => {
            let in_range = t >= 0 && 2 * l <= n && t * t >= 4 * (l * (n - l)) as i64;
            if !in_range {
                return Ok(None);
            }
            let c = table.check_lower_bound(l, t)?;
            ("lower", format_rational(&c.lhs), format_rational(&c.rhs), c.holds)
        }
        Bound::Entropy => {
            if l >= n || t.unsigned_abs() as usize >= n {
                return Ok(None);
            }
            let c = table.check_entropy_bound(l, t, slack)?;
            ("entropy", c.log2_value.to_string(), c.entropy_rhs.to_string(), c.holds)
        }
    };
    Ok(Some(vec![name.into(), n.to_string(), l.to_string(), t.to_string(), value, lhs, rhs, pass.to_string()]))
}

fn emit_dist(d: &SymmetricDist, out: &ReprArg) -> String {
    let doc = match out.repr {
        DistRepr::WeightPmf => Document::from_pmf(d.pmf()),
        DistRepr::LevelProfile => Document::from_profile(d.profile()),
    };
    line(doc.to_json())
}

fn dist(ctx: &Ctx, cmd: Dist) -> Res<Output> {
    match cmd {
        Dist::Build { kind, n, k, lambda, t, level, m, r, out } => {
            ctx.check_n(n)?;
            let d = match kind {
                DistKind::Binomial => SymmetricDist::binomial(n)?,
                DistKind::WeightClass => SymmetricDist::weight_class(n, need(t, "t", "weight-class")?)?,
                DistKind::SingleLevel => {
                    let level = need(level, "level", "single-level")?;
                    let lambda = match lambda {
                        Some(l) => l,
                        None => max_valid_lambda(n, level)?.unwrap_or_else(|| rat(1, 1)),
                    };
                    SymmetricDist::single_level(n, level, lambda)?
                }
                DistKind::DLambda => {
                    let k = need(k, "k", "d-lambda")?;
                    let lambda = match lambda {
                        Some(l) => l,
                        None => max_valid_lambda(n, 2 * k)?
                            .ok_or_else(|| anyhow::anyhow!("level {} has no valid positive bias", 2 * k))?,
                    };
                    SymmetricDist::d_lambda(n, k, lambda)?
                }
                DistKind::ModWeight => SymmetricDist::mod_weight(n, need(m, "m", "mod-weight")?, r.unwrap_or(0))?,
            };
            Ok(Output::ok(emit_dist(&d, &out)))
        }
        Dist::Noise { input, rho, out } => Ok(Output::ok(emit_dist(&ctx.dist(&input)?.apply_noise(&rho)?, &out))),
        Dist::Convolve { a, b, out } => Ok(Output::ok(emit_dist(&ctx.dist(&a)?.convolve(&ctx.dist(&b)?)?, &out))),
        Dist::Shift { input, s } => {
            let law = ctx.dist(&input)?.shifted_weight_law(s)?;
            Ok(Output::ok(line(Document::from_pmf(&law).to_json())))
        }
        Dist::Tv { a, b } => Ok(Output::ok(line(format_rational(&ctx.dist(&a)?.tv_distance(&ctx.dist(&b)?)?)))),
        Dist::Tail { input, theta } => Ok(Output::ok(line(format_rational(&ctx.dist(&input)?.tail(theta))))),
    }
}

fn test(ctx: &Ctx, cmd: TestCmd) -> Res<Output> {
    match cmd {
        TestCmd::Build { kind, n, theta, k, mu, t, input } => {
            let g = match kind {
                TestKind::FromJson => ctx.test(&need(input, "input", "from-json")?)?,
                _ => {
                    let n = need(n, "n", "test build")?;
                    ctx.check_n(n)?;
                    match kind {
                        TestKind::Threshold => SymmetricTest::threshold(n, need(theta, "theta", "threshold")?)?,
                        TestKind::WeightClass => {
                            SymmetricTest::weight_class_indicator(n, need(t, "t", "weight-class")?)?
                        }
                        _ => {
                            let k = need(k, "k", "truncated-kraw")?;
                            let mu = match mu {
                                Some(mu) => mu,
                                None => max_valid_lambda(n, 2 * k)?
                                    .ok_or_else(|| anyhow::anyhow!("level {} has no valid positive bias", 2 * k))?,
                            };
                            SymmetricTest::truncated_kraw(n, k, &mu)?
                        }
                    }
                }
            };
            Ok(Output::ok(line(Document::from_test(&g).to_json())))
        }
        TestCmd::Coeffs { input } => {
            Ok(Output::ok(line(Document::from_coeffs(&ctx.test(&input)?.level_coeffs()).to_json())))
        }
        TestCmd::Smooth { input, rho } => {
            Ok(Output::ok(line(Document::from_coeffs(&ctx.test(&input)?.smooth(&rho)?).to_json())))
        }
        TestCmd::Expectation { test, dist } => {
            let e = ctx.test(&test)?.expectation(&ctx.dist(&dist)?)?;
            Ok(Output::ok(line(format_rational(&e))))
        }
    }
}

fn lp(ctx: &Ctx, cmd: Lp) -> Res<Output> {
    match cmd {
        Lp::Optimize { test, k, sense } => {
            let res = optimize(&ctx.test(&test)?, k, sense)?;
            Ok(Output { text: line(LpDocument::from_result(&res).to_json()), success: res.certified })
        }
        Lp::MinTv { dist, k } => {
            let res = min_tv_to_kwise(&ctx.dist(&dist)?, k)?;
            Ok(Output { text: line(LpDocument::from_result(&res).to_json()), success: res.certified })
        }
        Lp::Vertices { n, k } => {
            let verts = vertex_enumerate(n, k, ctx.config.vertex_budget)?;
            let docs: Vec<Document> = verts.iter().map(Document::from_pmf).collect();
            Ok(Output::ok(line(serde_json::to_string_pretty(&docs).expect("documents serialize"))))
        }
    }
}

fn strings(v: &[symbias::Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn poly(cmd: PolyCmd) -> Res<Output> {
    match cmd {
        PolyCmd::ElemSym { y, ell } => Ok(Output::ok(line(format_rational(&elem_sym(&y, ell)?)))),
        PolyCmd::MaclaurinCheck { y, ell } => {
            let c = check_maclaurin_bound(&RealTuple::new(y)?, ell)?;
            let v = json!({
                "lhs": format_rational(&c.lhs),
                "rhs": format_rational(&c.rhs),
                "holds": c.holds,
                "equality": c.equality,
            });
            Ok(Output { text: pretty(&v), success: c.holds })
        }
        PolyCmd::Sturm { coeffs } => {
            let p = Poly::new(coeffs);
            let seq: Vec<String> = p.sturm_sequence().iter().map(|q| q.to_string()).collect();
            let v = json!({
                "polynomial": p.to_string(),
                "sturm": seq,
                "distinct_real_roots": p.distinct_real_roots(),
                "real_roots_with_multiplicity": p.real_roots_with_multiplicity(),
                "real_rooted": is_real_rooted(&p)?,
            });
            Ok(Output::ok(pretty(&v)))
        }
        PolyCmd::Truncate { s } => {
            let t = AttainableTuple::certify(s)?.truncate()?;
            let v = json!({ "s": strings(t.values()), "polynomial": t.polynomial().to_string() });
            Ok(Output::ok(pretty(&v)))
        }
        PolyCmd::Sweep { count, max_len, seed } => {
            if max_len < 2 {
                return usage("poly sweep requires --max-len >= 2");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let tuples: Vec<RealTuple> = (0..count)
                .map(|_| {
                    let len = rng.gen_range(2..=max_len);
                    let y = (0..len).map(|_| rat(rng.gen_range(-100..=100), rng.gen_range(1..=100))).collect();
                    RealTuple::new(y)
                })
                .collect::<symbias::Result<_>>()?;
            let (mut checks, mut failures, mut equalities) = (0usize, 0usize, 0usize);
            for y in &tuples {
                for ell in 1..=y.len() {
                    let c = check_maclaurin_bound(y, ell)?;
                    checks += 1;
                    failures += usize::from(!c.holds);
                    equalities += usize::from(c.equality);
                }
            }
            let v = json!({
                "seed": seed,
                "tuples": count,
                "checks": checks,
                "failures": failures,
                "equalities": equalities,
            });
            Ok(Output { text: pretty(&v), success: failures == 0 })
        }
    }
}

fn verify_cmd(ctx: &Ctx, v: Verify) -> Res<Output> {
    let params = ClaimParams {
        n: v.n,
        k: v.k,
        rho: v.rho.clone(),
        lambda: v.lambda.clone(),
        mu: v.mu.clone(),
        theta: v.theta,
        s: v.s,
        m: v.m,
        max_n: Some(ctx.config.vertex_budget),
        slack: v.slack,
        t_sweep: v.t_sweep,
    };
    if let Some(slack) = v.slack {
        let c = Config { float_slack: slack, ..ctx.config.clone() };
        if let Err(e) = c.validate() {
            return usage(e.to_string());
        }
    }
    let results = if v.claim == "all" {
        verify::run_all(&params)
    } else {
        match v.claim.parse::<Claim>() {
            Ok(c) => vec![verify::run_default(c, &params)],
            Err(e) => return usage(e.to_string()),
        }
    };
    let mut reports: Vec<VerdictReport> = Vec::new();
    for r in results {
        reports.extend(r?);
    }
    let success = reports.iter().all(|r| r.ok());
    let text = match v.format() {
        Format::Json => line(io::reports_to_json(&reports)),
        Format::Csv => io::reports_to_csv(&reports)?,
        Format::Text => reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n"),
    };
    Ok(Output { text, success })
}
