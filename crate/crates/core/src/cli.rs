//! The `fibword` command line: one subcommand per operation.
//!
//! Reports go to stdout as JSON, CSV or text. Failures print a one-line JSON
//! object `{"error": kind, "message": …}` to stderr and exit with 1, or with
//! 2 when a resource budget ran out.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::complexity::{
    arithmetic_complexity, delta_apply, delta_factorize, enumerate_square_free, factor_complexity_with,
    is_sturmian_profile, palindromic_factor_count, scattered_palindromes, ComplexityProfile, FactorBackend,
    SquareFreeCensus, DEFAULT_NODE_BUDGET, DEFAULT_PALINDROME_LIMIT,
};
use crate::density::{
    balance_check, frequency_report, golden_conjugate, golden_density, perron_eigenvalue, symbol_frequency,
};
use crate::error::{Error, Result};
use crate::factorial_word::{
    coverage_profile, factor_search, factorial_word_prefix, leading_digits_search, logfactorial_equidistribution,
};
use crate::modfib::{
    density_formula, lucas_zeros, pisano_period, residue_density_bruteforce, residue_tree, DEFAULT_MODULUS_BUDGET,
};
use crate::morphism::{compose_sturmian, fibonacci_morphism, mbonacci_morphism, thue_morse_morphism, Morphism};
use crate::report::ratio_string;
use crate::verify::{self, VerifyOptions, DEFAULT_SEED};
use crate::word::{Alphabet, Word};

pub const DEFAULT_DIGIT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "fibword", version, about = "Fibonacci word, Sturmian and factorial-word computations")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    /// Seed for randomized property runs.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads for parallel searches; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Source {
    /// fibonacci, tribonacci, mbonacci:M, thue-morse, or rules like "a->ab,b->a".
    #[arg(long, default_value = "fibonacci")]
    pub morphism: String,
    /// Prefix length of the fixed point.
    #[arg(long, default_value_t = 1000)]
    pub len: usize,
    /// Letter the fixed point grows from; defaults to the first source letter.
    #[arg(long)]
    pub start: Option<char>,
    /// Use this word instead of a fixed-point prefix.
    #[arg(long)]
    pub word: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Backend {
    SuffixAutomaton,
    Hashing,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prefix of a substitution fixed point.
    Generate(Source),
    /// Factor complexity profile p(n).
    Complexity {
        #[command(flatten)]
        source: Source,
        /// Largest n; defaults to min(len, 20).
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, value_enum, default_value = "suffix-automaton")]
        backend: Backend,
    },
    /// Arithmetic complexity profile a(n) on a finite prefix.
    Arithmetic {
        #[command(flatten)]
        source: Source,
        /// Largest n; defaults to min(len, 10).
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Compose Sturmian generators E, phi, phit (first listed applies first).
    Sturmian {
        /// Generators, separated by spaces or commas.
        #[arg(required = true)]
        generators: Vec<String>,
        /// Word over {a,b} to apply the composition to.
        #[arg(long)]
        apply: Option<String>,
    },
    /// Square-free census over k letters.
    Squarefree {
        #[arg(long, default_value_t = 3)]
        alphabet: usize,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        /// List the words instead of counting them.
        #[arg(long)]
        list: bool,
        /// List without a length cap (terminates for k <= 2 only).
        #[arg(long)]
        unbounded: bool,
        #[arg(long, env = "FIBWORD_NODE_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
    },
    /// The coding a->abb, b->ab, c->a and its inverse.
    Delta {
        #[arg(long, conflicts_with = "factorize", required_unless_present = "factorize")]
        apply: Option<String>,
        #[arg(long)]
        factorize: Option<String>,
    },
    /// Palindromic factors and scattered palindromes of a word.
    Palindromes {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = DEFAULT_PALINDROME_LIMIT)]
        limit: usize,
    },
    /// Symbol frequencies, with window envelopes when --window is given.
    Frequency {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        window: Option<usize>,
    },
    /// Window deviation of one letter's frequency against the bound 1/n.
    Balance {
        #[command(flatten)]
        source: Source,
        /// Letter to check; defaults to the rare letter of the morphism.
        #[arg(long)]
        symbol: Option<char>,
        /// Target frequency; defaults to 1/phi^2.
        #[arg(long)]
        target: Option<f64>,
        #[arg(long, default_value_t = 10)]
        min: usize,
        #[arg(long, default_value_t = 1000)]
        max: usize,
    },
    /// F(n)/F(n+1) with exact distance to phi - 1.
    Golden {
        #[arg(long, default_value_t = 40)]
        n_max: usize,
    },
    /// Perron-Frobenius data of the m-bonacci substitution.
    Perron {
        #[arg(long, default_value_t = 3)]
        m: usize,
    },
    /// Pisano period of m.
    Pisano { m: u64 },
    /// Lucas zeros modulo m within one Pisano period.
    Lucaszeros { m: u64 },
    /// Exact limiting density of Fibonacci residues modulo powers of p.
    Density {
        #[arg(long)]
        prime: u64,
        /// Attach brute-force densities for lambda = 0..=LAMBDA_MAX.
        #[arg(long, value_name = "LAMBDA_MAX")]
        brute_force: Option<u32>,
        #[arg(long, env = "FIBWORD_MODULUS_BUDGET", default_value_t = DEFAULT_MODULUS_BUDGET)]
        modulus_budget: u64,
    },
    /// Brute-force density of Fibonacci residues modulo p^lambda.
    Densbrute {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        lambda: u32,
        /// Also report how residues split between consecutive levels.
        #[arg(long)]
        tree: bool,
        #[arg(long, env = "FIBWORD_MODULUS_BUDGET", default_value_t = DEFAULT_MODULUS_BUDGET)]
        modulus_budget: u64,
    },
    /// The word of concatenated factorials in base b.
    Fword {
        #[arg(long, default_value_t = 10)]
        base: u32,
        /// Digits to print and to scan.
        #[arg(long, default_value_t = 100)]
        digits: u64,
        /// Report coverage of length-k factors within the scanned digits.
        #[arg(long)]
        coverage: Option<usize>,
        /// First position of this factor within the scanned digits.
        #[arg(long)]
        find: Option<String>,
        /// Smallest n whose factorial starts with these digits.
        #[arg(long)]
        leading: Option<String>,
        /// Log-factorial equidistribution diagnostic over n = 1..=N.
        #[arg(long, value_name = "N")]
        weyl: Option<u64>,
        #[arg(long, env = "FIBWORD_N_BUDGET", default_value_t = 100_000)]
        n_budget: u64,
    },
    /// Smallest n whose base-b factorial starts with a digit string.
    Leading {
        #[arg(long, default_value_t = 10)]
        base: u32,
        #[arg(long)]
        prefix: String,
        #[arg(long, env = "FIBWORD_N_BUDGET", default_value_t = 100_000)]
        n_budget: u64,
    },
    /// Equidistribution diagnostic for the fractional parts of log_b(n!).
    Weyl {
        #[arg(long, default_value_t = 10)]
        base: u32,
        #[arg(long, default_value_t = 100_000)]
        n_max: u64,
        #[arg(long, default_value_t = 1)]
        frequency: i64,
    },
    /// Run the acceptance criteria and print a pass/fail table.
    Verify {
        /// Run only these criteria (1-11).
        #[arg(long)]
        criterion: Vec<u32>,
        /// Append wall-clock times (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
}

/// A rendered report. CSV and text fall back to pretty JSON where a
/// command has no natural table or plain form.
struct Report {
    json: Value,
    csv: Option<String>,
    text: Option<String>,
    failed: bool,
}

impl Report {
    fn json<T: Serialize>(v: &T) -> Result<Self> {
        let json = serde_json::to_value(v).map_err(|e| Error::Domain(format!("serialization failed: {e}")))?;
        Ok(Report { json, csv: None, text: None, failed: false })
    }

    fn csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    fn text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }

    fn render(&self, format: Format) -> Result<String> {
        let pretty = || serde_json::to_string_pretty(&self.json).expect("values serialize") + "\n";
        Ok(match format {
            Format::Json => serde_json::to_string(&self.json).expect("values serialize") + "\n",
            Format::Csv => self.csv.clone().ok_or_else(|| Error::Domain("no CSV form for this report".into()))?,
            Format::Text => self.text.clone().or_else(|| self.csv.clone()).unwrap_or_else(pretty),
        })
    }
}

fn named_morphism(name: &str) -> Result<Morphism> {
    match name {
        "fibonacci" | "fib" => Ok(fibonacci_morphism()),
        "tribonacci" => mbonacci_morphism(3),
        "thue-morse" | "thuemorse" => Ok(thue_morse_morphism()),
        _ => match name.strip_prefix("mbonacci:") {
            Some(m) => mbonacci_morphism(m.parse().map_err(|_| Error::Parse(format!("bad m in {name:?}")))?),
            None => Morphism::parse(name),
        },
    }
}

fn source_word(src: &Source) -> Result<(Option<Morphism>, Word)> {
    if let Some(text) = &src.word {
        let mut labels: Vec<char> = Vec::new();
        for c in text.chars() {
            if !labels.contains(&c) {
                labels.push(c);
            }
        }
        labels.sort_unstable();
        if labels.is_empty() {
            labels.push('a');
        }
        let alphabet = Alphabet::new(labels)?;
        return Ok((None, alphabet.parse(text)?));
    }
    let sigma = named_morphism(&src.morphism)?;
    let start = match src.start {
        Some(c) => sigma
            .source()
            .index_of(c)
            .ok_or_else(|| Error::Domain(format!("start letter {c:?} not in {}", sigma.source())))?,
        None => 0,
    };
    let w = sigma.fixed_point_prefix(start, src.len)?;
    Ok((Some(sigma), w))
}

fn parse_over(alphabet: &Alphabet, text: &str) -> Result<Word> {
    alphabet.parse(text)
}

fn profile_report(profile: &ComplexityProfile, extra: Value) -> Result<Report> {
    let mut json = serde_json::to_value(profile).map_err(|e| Error::Domain(e.to_string()))?;
    if let (Value::Object(map), Value::Object(more)) = (&mut json, extra) {
        map.extend(more);
    }
    Ok(Report { json, csv: Some(profile.to_csv()), text: None, failed: false })
}

fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Generate(src) => {
            let (sigma, w) = source_word(src)?;
            let json = json!({
                "morphism": sigma.map(|s| s.to_string()),
                "length": w.len(),
                "word": w.to_string(),
            });
            // an empty prefix prints nothing at all
            let text = if w.is_empty() { String::new() } else { format!("{w}\n") };
            Ok(Report { json, csv: None, text: Some(text), failed: false })
        }
        Command::Complexity { source, n_max, backend } => {
            let (_, w) = source_word(source)?;
            let n = n_max.unwrap_or(w.len().min(20));
            let backend = match backend {
                Backend::SuffixAutomaton => FactorBackend::SuffixAutomaton,
                Backend::Hashing => FactorBackend::Hashing,
            };
            let p = factor_complexity_with(&w, n, backend)?;
            profile_report(&p, json!({ "sturmian": is_sturmian_profile(&p, n) }))
        }
        Command::Arithmetic { source, n_max } => {
            let (_, w) = source_word(source)?;
            let p = arithmetic_complexity(&w, n_max.unwrap_or(w.len().min(10)))?;
            profile_report(&p, json!({}))
        }
        Command::Sturmian { generators, apply } => {
            let gens = generators
                .iter()
                .flat_map(|g| g.split(','))
                .map(str::trim)
                .filter(|g| !g.is_empty())
                .map(str::parse)
                .collect::<Result<Vec<_>>>()?;
            let sigma = compose_sturmian(&gens);
            let image = match apply {
                Some(text) => Some(sigma.apply(&parse_over(sigma.source(), text)?)?.to_string()),
                None => None,
            };
            let json = json!({
                "morphism": sigma,
                "rules": sigma.to_string(),
                "matrix": sigma.adjacency_matrix(),
                "image": image,
            });
            let text = match &image {
                Some(img) => format!("{img}\n"),
                None => format!("{sigma}\n"),
            };
            Ok(Report { json, csv: None, text: Some(text), failed: false })
        }
        Command::Squarefree { alphabet, n_max, list, unbounded, node_budget } => {
            if *list {
                let cap = (!unbounded).then_some(*n_max);
                let words = enumerate_square_free(*alphabet, cap, *node_budget)?;
                let names: Vec<String> = words.iter().map(|w| w.to_string()).collect();
                let text = names.iter().map(|w| format!("{w}\n")).collect();
                return Ok(Report::json(&json!({ "alphabet_size": alphabet, "words": names }))?.text(text));
            }
            let census = SquareFreeCensus::compute(*alphabet, *n_max, *node_budget, cli.workers)?;
            let growth: Vec<Value> =
                census.growth_estimates().into_iter().map(|(n, g)| json!({ "n": n, "root": g })).collect();
            let json = json!({
                "alphabet_size": census.alphabet_size,
                "counts": census.counts,
                "nodes": census.nodes,
                "growth": growth,
            });
            Ok(Report { json, csv: Some(census.to_csv()), text: None, failed: false })
        }
        Command::Delta { apply, factorize } => {
            let (input, output) = match (apply, factorize) {
                (Some(w), _) => (w, delta_apply(&parse_over(&Alphabet::ternary_abc(), w)?)?),
                (None, Some(v)) => (v, delta_factorize(&parse_over(&Alphabet::binary_ab(), v)?)?),
                (None, None) => return Err(Error::Domain("give --apply or --factorize".into())),
            };
            let json = json!({ "input": input, "output": output.to_string() });
            Ok(Report::json(&json)?.text(format!("{output}\n")))
        }
        Command::Palindromes { word, limit } => {
            let (_, w) = source_word(&Source { morphism: String::new(), len: 0, start: None, word: Some(word.clone()) })?;
            let scattered = scattered_palindromes(&w, *limit)?;
            let json = json!({
                "word": word,
                "palindromic_factors": palindromic_factor_count(&w),
                "scattered_total": scattered.total().to_string(),
                "scattered_per_length": scattered,
            });
            Ok(Report::json(&json)?)
        }
        Command::Frequency { source, window } => {
            let (sigma, w) = source_word(source)?;
            let targets = natural_targets(sigma.as_ref(), w.alphabet().len())?;
            let mut rows = Vec::new();
            let mut csv = String::from("symbol,count,length,frequency,target\n");
            for s in 0..w.alphabet().len() {
                let f = symbol_frequency(&w, s as u8)?;
                let target = targets.as_ref().map(|t| t[s]);
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    f.symbol,
                    f.count,
                    f.length,
                    ratio_string(&f.frequency),
                    target.map(|t| t.to_string()).unwrap_or_default()
                ));
                let envelope = match window {
                    Some(n) => Some(frequency_report(&w, s as u8, *n, target.unwrap_or(f64::NAN))?),
                    None => None,
                };
                rows.push(json!({
                    "frequency": f,
                    "target": target,
                    "target_tolerance": target.map(|_| 1e-12),
                    "window": envelope,
                }));
            }
            Ok(Report::json(&json!({ "length": w.len(), "symbols": rows }))?.csv(csv))
        }
        Command::Balance { source, symbol, target, min, max } => {
            let (sigma, w) = source_word(source)?;
            let s = match symbol {
                Some(c) => w.alphabet().index_of(*c).ok_or_else(|| Error::Domain(format!("letter {c:?} not in word")))?,
                None => rare_letter(sigma.as_ref(), &w)?,
            };
            let phi_conj = golden_conjugate();
            let r = balance_check(&w, s, target.unwrap_or(phi_conj * phi_conj), *min..=*max)?;
            let mut csv = String::from("n,deviation,bound\n");
            for d in &r.windows {
                csv.push_str(&format!("{},{:e},{:e}\n", d.window, d.deviation, d.bound));
            }
            let text = format!(
                "ok: letter {} within 1/n for n in {min}..={max}; worst n={} deviation {:e}\n",
                r.symbol, r.worst.window, r.worst.deviation
            );
            Ok(Report::json(&r)?.csv(csv).text(text))
        }
        Command::Golden { n_max } => {
            let seq = golden_density(*n_max)?;
            let mut csv = String::from("n,numerator,denominator,deviation\n");
            for t in &seq.terms {
                csv.push_str(&format!("{},{},{},{:e}\n", t.n, t.numerator, t.denominator, t.approx_deviation));
            }
            Ok(Report::json(&seq)?.csv(csv))
        }
        Command::Perron { m } => {
            let d = perron_eigenvalue(*m)?;
            let text = format!("{:.15} (tolerance {:e}) pisot={}\n", d.eigenvalue.value, d.eigenvalue.tolerance, d.pisot);
            Ok(Report::json(&d)?.text(text))
        }
        Command::Pisano { m } => {
            let p = pisano_period(*m)?;
            Ok(Report::json(&json!({ "m": m, "pisano": p }))?.text(format!("{p}\n")))
        }
        Command::Lucaszeros { m } => {
            let z = lucas_zeros(*m)?;
            let text = z.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ") + "\n";
            Ok(Report::json(&json!({ "m": m, "lucas_zeros": z }))?.text(text))
        }
        Command::Density { prime, brute_force, modulus_budget } => {
            let mut d = density_formula(*prime)?;
            if let Some(lambda) = brute_force {
                d = d.with_trace(*lambda, *modulus_budget)?;
            }
            Ok(Report::json(&d)?.text(format!("{}\n", d.dens_string())))
        }
        Command::Densbrute { prime, lambda, tree, modulus_budget } => {
            let d = residue_density_bruteforce(*prime, *lambda, *modulus_budget)?;
            let levels = if *tree { Some(residue_tree(*prime, *lambda, *modulus_budget)?) } else { None };
            let json = json!({
                "p": prime,
                "lambda": lambda,
                "density": ratio_string(&d),
                "tree": levels,
            });
            Ok(Report::json(&json)?.text(format!("{}\n", ratio_string(&d))))
        }
        Command::Fword { base, digits, coverage, find, leading, weyl, n_budget } => {
            let alphabet = Alphabet::digits(*base)?;
            let shown = (*digits).min(DEFAULT_DIGIT_BUDGET) as usize;
            let mut json = json!({
                "base": base,
                "digits": digits,
                "prefix": factorial_word_prefix(*base, shown)?.to_string(),
            });
            let mut csv = None;
            if let Some(k) = coverage {
                json["coverage"] = serde_json::to_value(coverage_profile(*base, *k, *digits, false)?)
                    .map_err(|e| Error::Domain(e.to_string()))?;
            }
            if let Some(f) = find {
                json["find"] = json!({ "factor": f, "position": factor_search(*base, &alphabet.parse(f)?, *digits)? });
            }
            if let Some(l) = leading {
                json["leading"] = serde_json::to_value(leading_digits_search(*base, &alphabet.parse(l)?, *n_budget)?)
                    .map_err(|e| Error::Domain(e.to_string()))?;
            }
            if let Some(n) = weyl {
                let w = logfactorial_equidistribution(*base, *n, 1)?;
                csv = Some(w.histogram_csv());
                json["weyl"] = serde_json::to_value(&w).map_err(|e| Error::Domain(e.to_string()))?;
            }
            Ok(Report { json, csv, text: None, failed: false })
        }
        Command::Leading { base, prefix, n_budget } => {
            let alphabet = Alphabet::digits(*base)?;
            let hit = leading_digits_search(*base, &alphabet.parse(prefix)?, *n_budget)?;
            let text = match &hit {
                Some(h) => format!("{}\n", h.n),
                None => "none\n".to_string(),
            };
            Ok(Report::json(&json!({ "base": base, "prefix": prefix, "hit": hit }))?.text(text))
        }
        Command::Weyl { base, n_max, frequency } => {
            let w = logfactorial_equidistribution(*base, *n_max, *frequency)?;
            Ok(Report::json(&w)?.csv(w.histogram_csv()))
        }
        Command::Verify { criterion, timings } => {
            let opts = VerifyOptions { seed: cli.seed, workers: cli.workers };
            let outcomes = if criterion.is_empty() {
                verify::run_all(&opts)
            } else {
                criterion
                    .iter()
                    .map(|&id| {
                        verify::run_criterion(id, &opts)
                            .ok_or_else(|| Error::Domain(format!("no criterion {id}; valid ids are 1..=11")))
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            let failed = outcomes.iter().any(|o| !o.passed);
            let mut report = Report::json(&outcomes)?.text(verify::table(&outcomes, *timings));
            report.failed = failed;
            Ok(report)
        }
    }
}

/// Limit frequencies when they are known: `ρ^{-i}` for m-bonacci and
/// `1/φ, 1/φ²` for the Fibonacci morphism on `{a, b}`.
fn natural_targets(sigma: Option<&Morphism>, k: usize) -> Result<Option<Vec<f64>>> {
    let Some(sigma) = sigma else { return Ok(None) };
    if *sigma == fibonacci_morphism() {
        let g = golden_conjugate();
        return Ok(Some(vec![g, g * g]));
    }
    if k >= 2 && *sigma == mbonacci_morphism(k)? {
        let rho = perron_eigenvalue(k)?.eigenvalue.value;
        return Ok(Some((1..=k as i32).map(|i| rho.powi(-i)).collect()));
    }
    Ok(None)
}

/// The letter with limit frequency `1/φ²` in a binary Sturmian fixed point:
/// the least frequent letter of the prefix.
fn rare_letter(sigma: Option<&Morphism>, w: &Word) -> Result<u8> {
    if w.alphabet().len() != 2 {
        return Err(Error::Domain(format!(
            "balance needs a binary word or an explicit --symbol, got alphabet {}",
            w.alphabet()
        )));
    }
    if let Some(s) = sigma {
        if *s == fibonacci_morphism() || *s == mbonacci_morphism(2)? {
            return Ok(1);
        }
    }
    Ok(if w.occurrences(1) <= w.occurrences(0) { 1 } else { 0 })
}

/// Parses `args`, runs the command and writes the report; returns the exit status.
pub fn run<'a, I, T>(args: I, out: &'a mut dyn Write, err: &'a mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let target = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli).and_then(|r| Ok((r.render(cli.format)?, r.failed))) {
        Ok((text, failed)) => {
            let _ = out.write_all(text.as_bytes());
            i32::from(failed)
        }
        Err(e) => {
            let obj = json!({ "error": e.kind(), "message": e.to_string() });
            let _ = writeln!(err, "{obj}");
            if e.is_resource() {
                2
            } else {
                1
            }
        }
    }
}
