//! Command line front end: configuration loading, dispatch and output.
//!
//! Every command produces a table. Without `--json` it is printed as TSV
//! (cells of "keyed" columns render as `name=value`); with `--json` the
//! same rows are printed as a JSON array of objects.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::algebra::{random_monomial, AlgebraElement};
use crate::error::{Error, Result};
use crate::lattice::{format_subset, Flavor, ModuleSignature, Sign, TorusDatum};
use crate::modules::{self, Label, VermaStatus};
use crate::parse::{parse_element, parse_int_list, parse_rational_list};
use crate::poly::GTPoly;
use crate::quiver;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    n: Option<i64>,
    k: Option<i64>,
    iota: Option<Vec<Vec<i64>>>,
    alpha: Option<String>,
    #[serde(rename = "S")]
    subset: Option<Vec<i64>>,
    mu: Option<Vec<i64>>,
    chi: Option<Vec<i64>>,
    flavor: Option<String>,
}

/// A validated theory file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryConfig {
    pub datum: Arc<TorusDatum>,
    pub alpha: Vec<Sign>,
    /// Zero-based.
    pub subset: BTreeSet<usize>,
    pub mu: Vec<i64>,
    pub chi: Vec<i64>,
    pub flavor: Flavor,
}

impl TheoryConfig {
    /// One hypermultiplet of charge 1, `α = -`, `S = ∅`, `μ = 0`, `χ = 1`.
    pub fn sqed1() -> Self {
        Self {
            datum: Arc::new(TorusDatum::sqed1()),
            alpha: vec![Sign::Minus],
            subset: BTreeSet::new(),
            mu: vec![0],
            chi: vec![1],
            flavor: Flavor::Small,
        }
    }

    /// Parses and validates, reporting every violated invariant at once.
    pub fn from_json_str(src: &str) -> Result<Self> {
        let raw: RawConfig =
            serde_json::from_str(src).map_err(|e| Error::Validation(vec![format!("json: {e}")]))?;
        let mut problems = Vec::new();
        let n = match raw.n {
            Some(n) if n > 0 => Some(n as usize),
            Some(n) => {
                problems.push(format!("n must be positive, got {n}"));
                None
            }
            None => {
                problems.push("missing key \"n\"".to_string());
                None
            }
        };
        let k = match raw.k {
            Some(k) if k > 0 => Some(k as usize),
            Some(k) => {
                problems.push(format!("k must be positive, got {k}"));
                None
            }
            None => {
                problems.push("missing key \"k\"".to_string());
                None
            }
        };
        let mut datum = None;
        match (&raw.iota, n, k) {
            (None, _, _) => problems.push("missing key \"iota\"".to_string()),
            (Some(iota), Some(n), Some(k)) => {
                if iota.len() != n {
                    problems.push(format!("dimension mismatch: iota has {} rows, expected n = {n}", iota.len()));
                } else {
                    let errs = TorusDatum::violations(k, iota);
                    if errs.is_empty() {
                        datum = Some(Arc::new(TorusDatum::new(k, iota.clone())?));
                    } else {
                        problems.extend(errs.iter().map(|e| e.to_string()));
                    }
                }
            }
            _ => {}
        }
        let alpha = match (&raw.alpha, n) {
            (Some(a), Some(n)) => match Sign::parse_vector(a) {
                Ok(v) if v.len() == n => Some(v),
                Ok(v) => {
                    problems.push(format!("dimension mismatch: alpha has length {}, expected n = {n}", v.len()));
                    None
                }
                Err(e) => {
                    problems.push(e.to_string());
                    None
                }
            },
            (None, Some(n)) => Some(vec![Sign::Minus; n]),
            _ => None,
        };
        let subset = match n {
            Some(n) => {
                let mut s = BTreeSet::new();
                for &i in raw.subset.as_deref().unwrap_or(&[]) {
                    if i < 1 || i as usize > n {
                        problems.push(format!("S entry {i} outside 1..={n}"));
                    } else if !s.insert(i as usize - 1) {
                        problems.push(format!("S entry {i} repeated"));
                    }
                }
                Some(s)
            }
            None => None,
        };
        let mu = match (raw.mu, n) {
            (Some(m), Some(n)) if m.len() != n => {
                problems.push(format!("dimension mismatch: mu has length {}, expected n = {n}", m.len()));
                None
            }
            (Some(m), _) => Some(m),
            (None, Some(n)) => Some(vec![0; n]),
            (None, None) => None,
        };
        let chi = match (raw.chi, k) {
            (Some(c), Some(k)) if c.len() != k => {
                problems.push(format!("dimension mismatch: chi has length {}, expected k = {k}", c.len()));
                None
            }
            (Some(c), _) => Some(c),
            (None, Some(k)) => Some(vec![1; k]),
            (None, None) => None,
        };
        let flavor = match raw.flavor.as_deref() {
            None | Some("small") => Some(Flavor::Small),
            Some("big") => Some(Flavor::Big),
            Some(other) => {
                problems.push(format!("flavor must be \"small\" or \"big\", got {other:?}"));
                None
            }
        };
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }
        match (datum, alpha, subset, mu, chi, flavor) {
            (Some(datum), Some(alpha), Some(subset), Some(mu), Some(chi), Some(flavor)) => {
                Ok(Self { datum, alpha, subset, mu, chi, flavor })
            }
            _ => Err(Error::Validation(vec!["incomplete configuration".into()])),
        }
    }

    pub fn signature(&self) -> Result<Arc<ModuleSignature>> {
        Ok(Arc::new(ModuleSignature::new(
            self.datum.clone(),
            self.alpha.clone(),
            self.subset.clone(),
            self.mu.clone(),
            self.flavor,
        )?))
    }
}

pub fn load_config(path: &Path) -> Result<TheoryConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    TheoryConfig::from_json_str(&text)
}

#[derive(Debug, Parser)]
#[command(name = "hypertoric", version, about = "Exact hypertoric algebra, module and quiver computations")]
struct Cli {
    /// Theory file (JSON). Defaults to one hypermultiplet of charge 1.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Emit JSON instead of TSV.
    #[arg(long, global = true)]
    json: bool,
    /// Radius of enumeration boxes.
    #[arg(long = "box", global = true, default_value_t = 3)]
    radius: u32,
    /// Character override, e.g. "1,-1".
    #[arg(long, global = true, allow_hyphen_values = true)]
    chi: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Product a*b. Column: element.
    AlgebraMul {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Commutator [a,b]. Column: element.
    AlgebraComm {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Fourier transform. Column: element.
    AlgebraFourier {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Sign vector; defaults to the config's alpha.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// a|sigma>. Columns: weight, coefficient.
    ModuleAct {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
    },
    /// Boxed support points. Column: weight.
    ModuleSupport,
    /// Columns: label, in_O, simple_probe, verma, sigma_max.
    ModuleClassify,
    /// Columns: degree, rank.
    ModuleCharacter {
        #[arg(long, default_value_t = 10)]
        max_degree: u32,
    },
    /// Highest weights per exceptional subset. Columns: S, x1..xn.
    ModuleHikita,
    /// Torus fixed points. Either --weights "g1;g2;.." or the type A chain
    /// given by --n and --degrees. Column: point.
    QuiverFixed {
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        degrees: Option<String>,
    },
    /// Gelfand-Tsetlin patterns. Column: pattern.
    QuiverGt {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degrees: String,
    },
    /// Columns: r, count; then a total row with the predicted dimension.
    QuiverSpaltenstein {
        #[arg(long)]
        mu: String,
    },
    /// Columns: polynomial, strings, ratio_holds, general_position, dimension, factors.
    QuiverDrinfeld {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        mu: String,
    },
    /// Columns: mu, r, q=.. counts, polynomial, fits, at_1, fixed.
    QuiverCount {
        #[arg(long)]
        mu: String,
        /// Codimension; all values when omitted.
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, default_value = "2,3,4,5")]
        q: String,
    },
    /// Seeded random checks of the defining relations, associativity and
    /// the module law. Prints "OK passed/trials".
    CheckRelations {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: u32,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
    },
}

/// Rows of named cells. `keyed` columns print as `name=value` in TSV.
#[derive(Debug, Default)]
pub struct Table {
    columns: Vec<(String, bool)>,
    rows: Vec<Vec<Value>>,
}

impl Table {
    fn new(columns: &[(&str, bool)]) -> Self {
        Self { columns: columns.iter().map(|(c, k)| (c.to_string(), *k)).collect(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .zip(&self.columns)
                .map(|(v, (name, keyed))| {
                    let text = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    if *keyed {
                        format!("{name}={text}")
                    } else {
                        text
                    }
                })
                .collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().map(|(c, _)| c.clone()).zip(row.iter().cloned()).collect();
                Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("serializable");
        s.push('\n');
        s
    }
}

fn join_ints<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn single(name: &str, value: String) -> Table {
    let mut t = Table::new(&[(name, false)]);
    t.push(vec![json!(value)]);
    t
}

fn label_name(l: Label) -> &'static str {
    match l {
        Label::Neumann => "Neumann",
        Label::GenericDirichlet => "GenericDirichlet",
        Label::ExceptionalDirichlet => "ExceptionalDirichlet",
        Label::Other => "Other",
    }
}

fn verma_name(v: VermaStatus) -> &'static str {
    match v {
        VermaStatus::Verma => "Verma",
        VermaStatus::CoVerma => "CoVerma",
        VermaStatus::Neither => "Neither",
        VermaStatus::NotApplicable => "NA",
    }
}

fn parse_u32_list(s: &str) -> Result<Vec<u32>> {
    parse_int_list(s)?
        .into_iter()
        .map(|v| u32::try_from(v).map_err(|_| Error::Precondition(format!("expected a non-negative entry, got {v}"))))
        .collect()
}

fn dispatch(cli: &Cli) -> Result<Table> {
    let mut config = match &cli.config {
        Some(p) => load_config(p)?,
        None => TheoryConfig::sqed1(),
    };
    if let Some(c) = &cli.chi {
        let chi = parse_int_list(c)?;
        config.datum.check_cocharacter(&chi)?;
        config.chi = chi;
    }
    let datum = config.datum.clone();
    let radius = cli.radius;
    Ok(match &cli.command {
        Command::AlgebraMul { a, b } => {
            let prod = parse_element(a, &datum)?.multiply(&parse_element(b, &datum)?)?;
            single("element", prod.to_string())
        }
        Command::AlgebraComm { a, b } => {
            let c = parse_element(a, &datum)?.commutator(&parse_element(b, &datum)?)?;
            single("element", c.to_string())
        }
        Command::AlgebraFourier { a, alpha } => {
            let alpha = match alpha {
                Some(s) => Sign::parse_vector(s)?,
                None => config.alpha.clone(),
            };
            single("element", parse_element(a, &datum)?.fourier_transform(&alpha)?.to_string())
        }
        Command::ModuleAct { a, sigma } => {
            let sig = config.signature()?;
            let v = modules::basis_vector(&sig, &parse_int_list(sigma)?)?;
            let out = modules::act(&parse_element(a, &datum)?, &v)?;
            let mut t = Table::new(&[("weight", false), ("coefficient", false)]);
            for (key, c) in out.entries() {
                t.push(vec![json!(join_ints(key)), json!(c.to_string())]);
            }
            t
        }
        Command::ModuleSupport => {
            let sig = config.signature()?;
            let mut t = Table::new(&[("weight", false)]);
            for p in sig.support_polytope().enumerate(radius) {
                t.push(vec![json!(join_ints(&p))]);
            }
            t
        }
        Command::ModuleClassify => {
            let sig = config.signature()?;
            let c = modules::classify(&sig, &config.chi)?;
            let mut t = Table::new(&[
                ("label", false),
                ("in_O", true),
                ("simple_probe", true),
                ("verma", true),
                ("sigma_max", true),
            ]);
            t.push(vec![
                json!(label_name(c.label)),
                json!(c.in_category_o),
                json!(modules::simplicity_probe(&sig, radius)),
                json!(verma_name(c.verma_status)),
                json!(c.sigma_max.map_or_else(|| "-".to_string(), |s| join_ints(&s))),
            ]);
            t
        }
        Command::ModuleCharacter { max_degree } => {
            let sig = config.signature()?;
            let mut t = Table::new(&[("degree", false), ("rank", false)]);
            for (d, r) in modules::character_series(&sig, &config.chi, *max_degree)? {
                t.push(vec![json!(d), json!(r)]);
            }
            t
        }
        Command::ModuleHikita => {
            let rows = modules::hikita_fixed_point_table(&datum, &config.alpha, &config.mu, &config.chi, radius)?;
            let names: Vec<String> = (1..=datum.n()).map(|i| format!("x{i}")).collect();
            let mut cols: Vec<(&str, bool)> = vec![("S", true)];
            cols.extend(names.iter().map(|s| (s.as_str(), true)));
            let mut t = Table::new(&cols);
            for (subset, table) in rows {
                let mut row = vec![json!(format_subset(&subset))];
                row.extend(table.into_iter().map(|(_, e)| json!(e.to_string())));
                t.push(row);
            }
            t
        }
        Command::QuiverFixed { weights, n, degrees } => {
            let points = match (weights, n, degrees) {
                (Some(w), None, None) => {
                    let functionals: Vec<Vec<i64>> =
                        w.split(';').map(parse_int_list).collect::<Result<_>>()?;
                    let d = functionals.first().map_or(0, |g| g.len());
                    quiver::torus_fixed_points(&quiver::WeightSystem::new(d, functionals)?, radius)
                }
                (None, Some(n), Some(d)) => quiver::type_a_fixed_points(*n, &parse_int_list(d)?)?,
                _ => {
                    return Err(Error::Validation(vec![
                        "quiver-fixed takes either --weights or both --n and --degrees".into(),
                    ]))
                }
            };
            let mut t = Table::new(&[("point", false)]);
            for p in points {
                t.push(vec![json!(join_ints(&p))]);
            }
            t
        }
        Command::QuiverGt { n, degrees } => {
            let mut t = Table::new(&[("pattern", false)]);
            for p in quiver::gt_patterns(*n, &parse_int_list(degrees)?)? {
                t.push(vec![json!(p.to_string())]);
            }
            t
        }
        Command::QuiverSpaltenstein { mu } => {
            let mu = parse_u32_list(mu)?;
            let m: u32 = mu.iter().sum();
            let mut t = Table::new(&[("r", false), ("count", false)]);
            let mut total = 0;
            for r in 0..=m {
                let c = quiver::spaltenstein_fixed_count(&mu, r);
                total += c;
                t.push(vec![json!(r.to_string()), json!(c)]);
            }
            let (dim, factors) = quiver::predicted_dimension(&mu);
            t.push(vec![json!("total"), json!(total)]);
            t.push(vec![json!("predicted"), json!(dim)]);
            t.push(vec![json!("factors"), json!(factors.join("⊗"))]);
            t
        }
        Command::QuiverDrinfeld { r, mu } => {
            let r = parse_rational_list(r)?;
            let mu = parse_int_list(mu)?;
            let (p, strings) = quiver::drinfeld_polynomial(&r, &mu)?;
            let lens: Vec<u32> = mu.iter().map(|&m| m as u32).collect();
            let (dim, factors) = quiver::predicted_dimension(&lens);
            let mut t = Table::new(&[
                ("polynomial", false),
                ("strings", true),
                ("ratio_holds", true),
                ("general_position", true),
                ("dimension", true),
                ("factors", true),
            ]);
            t.push(vec![
                json!(p.to_string()),
                json!(strings.to_string()),
                json!(quiver::drinfeld_ratio_holds(&p, &strings)),
                json!(quiver::general_position(&strings)),
                json!(dim),
                json!(factors.join("⊗")),
            ]);
            t
        }
        Command::QuiverCount { mu, r, q } => {
            let mu = parse_u32_list(mu)?;
            let qs: Vec<usize> = parse_u32_list(q)?.into_iter().map(|v| v as usize).collect();
            let m: u32 = mu.iter().sum();
            let rs: Vec<u32> = match r {
                Some(r) => vec![*r],
                None => (0..=m).collect(),
            };
            let qnames: Vec<String> = qs.iter().map(|q| format!("q{q}")).collect();
            let mut cols: Vec<(&str, bool)> = vec![("mu", false), ("r", false)];
            cols.extend(qnames.iter().map(|s| (s.as_str(), true)));
            cols.extend([("polynomial", false), ("fits", true), ("at_1", true), ("fixed", true)]);
            let mut t = Table::new(&cols);
            for r in rs {
                let row = quiver::point_count_row(&mu, r, &qs)?;
                let mut cells = vec![json!(join_ints(&row.mu)), json!(row.r)];
                cells.extend(row.counts.iter().map(|(_, c)| json!(c)));
                cells.push(json!(format_int_poly(&row.polynomial)));
                cells.push(json!(row.fits));
                cells.push(json!(row.value_at_one));
                cells.push(json!(row.fixed_count));
                t.push(cells);
            }
            t
        }
        Command::CheckRelations { seed, trials, max_degree } => {
            let sig = config.signature()?;
            let passed = check_relations(&sig, *seed, *trials, radius as i64, *max_degree)?;
            let status = if passed == *trials { "OK" } else { "FAIL" };
            single("result", format!("{status} {passed}/{trials}"))
        }
    })
}

/// `q`-polynomial as `3 * q^2 + 1`.
pub fn format_int_poly(p: &[i64]) -> String {
    let mut out = String::new();
    for (deg, &c) in p.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let body = match deg {
            0 => c.abs().to_string(),
            1 => format!("{} * q", c.abs()),
            _ => format!("{} * q^{deg}", c.abs()),
        };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Runs `trials` seeded checks: the relation `[x_i, r^λ] = λ_iℏ r^λ`,
/// associativity of a random triple, and `act(ab, v) = act(a, act(b, v))`
/// on a random boxed support vector. Returns the number of passing trials.
pub fn check_relations(
    sig: &Arc<ModuleSignature>,
    seed: u64,
    trials: u32,
    radius: i64,
    max_degree: u32,
) -> Result<u32> {
    let datum = sig.datum().clone();
    let n = datum.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let support = sig.support_polytope().enumerate(radius.max(0) as u32);
    let mut passed = 0;
    for _ in 0..trials {
        let a = random_monomial(&datum, &mut rng, radius, max_degree);
        let b = random_monomial(&datum, &mut rng, radius, max_degree);
        let c = random_monomial(&datum, &mut rng, radius, max_degree);
        let mut ok = a.multiply(&b)?.multiply(&c)? == a.multiply(&b.multiply(&c)?)?;
        let lambda: Vec<i64> = b.terms().next().map(|(l, _)| l.clone()).unwrap_or_else(|| vec![0; datum.k()]);
        let r = AlgebraElement::monopole(datum.clone(), &lambda)?;
        let restricted = datum.restrict(&lambda);
        for (i, &li) in restricted.iter().enumerate() {
            let x = AlgebraElement::gt(datum.clone(), GTPoly::x(n, i))?;
            let expected = r.multiply(&AlgebraElement::gt(datum.clone(), GTPoly::h(n).scale(&crate::Rational::from_integer(li.into())))?)?;
            ok &= x.commutator(&r)? == expected;
        }
        if !support.is_empty() {
            let sigma = &support[rand::Rng::gen_range(&mut rng, 0..support.len())];
            let v = modules::basis_vector(sig, sigma)?;
            ok &= modules::act(&a.multiply(&b)?, &v)? == modules::act(&a, &modules::act(&b, &v)?)?;
        }
        if ok {
            passed += 1;
        }
    }
    Ok(passed)
}

/// Parses `args` (including the program name) and returns the rendered
/// output, or the error to report.
pub fn execute<I, T>(args: I) -> std::result::Result<String, (i32, String)>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return if code == 0 { Ok(e.to_string()) } else { Err((1, e.to_string())) };
        }
    };
    match dispatch(&cli) {
        Ok(t) => Ok(if cli.json { t.to_json() } else { t.to_tsv() }),
        Err(e) => Err((e.exit_code(), format!("error: {e}\n"))),
    }
}

/// Entry point for the binary: prints to stdout/stderr, returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match execute(args) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err((code, msg)) => {
            eprint!("{msg}");
            code
        }
    }
}
