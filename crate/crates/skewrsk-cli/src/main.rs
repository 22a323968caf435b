use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use skewrsk::biword::{MatrixBar, WeightedBiword};
use skewrsk::crystal::{apply_op_sequence, OpSequence};
use skewrsk::cylinder::{ss_backward, ss_forward, viennot_dynamics};
use skewrsk::greene::{d_all, g_k, i_all, mu_from_decreasing, mu_from_increasing};
use skewrsk::knuth::{format_weighted_word, gen_dual_knuth_neighbors, gen_knuth_neighbors, invariance_suite, parse_weighted_word};
use skewrsk::leading::{upsilon, upsilon_inverse, UpsilonImage};
use skewrsk::rmatrix::{combinatorial_r, yang_baxter_check};
use skewrsk::scattering::{conservation_check, evacuation_check, phase_shift_verify};
use skewrsk::symfunc::{verify_identity, Bounds, Identity, IdentityParams};
use skewrsk::{gen, golden};
use skewrsk::{iota1, iota1_inverse, iota2, iota2_inverse, run_dynamics, skew_rsk, skew_rsk_inverse};
use skewrsk::{stabilize_backward, stabilize_forward, Error, Letter, Partition, SkewTableau, TableauPair};

#[derive(Parser)]
#[command(name = "skewrsk", version, about = "Skew RSK dynamics, bicrystals, Greene invariants and identity checks")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Input file (default: stdin).
    #[arg(long = "in", global = true)]
    input: Option<String>,
    /// Alphabet size.
    #[arg(long, global = true)]
    n: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Generate a random instance instead of reading input.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Size of random instances (cells or biword entries).
    #[arg(long, global = true, default_value_t = 6)]
    cells: usize,
    /// Step / enumeration cap for searches.
    #[arg(long, global = true, env = "SKEWRSK_CAP")]
    cap: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Verb {
    /// The skew RSK map on a pair.
    Rsk {
        #[arg(long)]
        inverse: bool,
    },
    /// ι₁ or ι₂.
    Iota {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(long)]
        inverse: bool,
    },
    /// `steps` applications of the dynamics (negative runs backward).
    Dynamics {
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        steps: i64,
    },
    /// Run until the dynamics only translates columns.
    Stabilize {
        #[arg(long)]
        backward: bool,
    },
    /// Pair to (biword, ν), or back with --forward.
    Ss {
        #[arg(long)]
        forward: bool,
    },
    /// The Viennot map on a biword, iterated `steps` times.
    Viennot {
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        steps: i64,
    },
    /// I_k, D_k, G_k and the Greene shape of a biword.
    Greene,
    /// Apply an operator sequence such as `F1[2] E2[0]`.
    Crystal {
        #[arg(long)]
        ops: String,
        /// Act on a biword instead of a pair.
        #[arg(long)]
        biword: bool,
    },
    /// The combinatorial R-matrix on two columns, e.g. `--left 1,3 --right 2`.
    Rmatrix {
        #[arg(long, value_delimiter = ',')]
        left: Vec<Letter>,
        #[arg(long, value_delimiter = ',')]
        right: Vec<Letter>,
        /// Also check the braid relation with this third column.
        #[arg(long, value_delimiter = ',')]
        third: Option<Vec<Letter>>,
    },
    /// Υ of a pair.
    Upsilon,
    /// Υ⁻¹ of (V, W; κ; ν) given as JSON.
    UpsilonInv,
    /// Conservation, evacuation and phase shift checks.
    Scattering {
        #[arg(long)]
        t: Option<usize>,
    },
    /// Knuth moves of a weighted word, with the invariance checks.
    Knuth {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        dual: bool,
    },
    /// Check an identity up to the given degrees.
    Verify {
        identity: Identity,
        #[arg(long, default_value_t = 4)]
        deg: u32,
        #[arg(long, default_value_t = 5)]
        qdeg: u32,
        #[arg(long)]
        zdeg: Option<u32>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        z: Option<i64>,
    },
    /// Replay the worked examples.
    Golden,
}

enum Fail {
    Usage(String),
    Violated(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Undefined { .. } => Fail::Violated(e.to_string()),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

type Out = Result<(), Fail>;

struct Ctx {
    cli: Cli,
}

impl Ctx {
    fn read_input(&self) -> Result<String, Fail> {
        match &self.cli.input {
            Some(p) if p != "-" => std::fs::read_to_string(p).map_err(|e| Fail::Usage(format!("{p}: {e}"))),
            _ => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(|e| Fail::Usage(e.to_string()))?;
                Ok(s)
            }
        }
    }

    fn json_input(&self) -> Result<Value, Fail> {
        let s = self.read_input()?;
        serde_json::from_str(&s).map_err(|e| Fail::Usage(format!("line {}: {e}", e.line())))
    }

    fn pair(&self) -> Result<TableauPair, Fail> {
        if let Some(seed) = self.cli.seed {
            return Ok(gen::classical_pair(&mut gen::rng(seed), self.cli.n.unwrap_or(3), self.cli.cells));
        }
        let s = self.read_input()?;
        parse_pair(&s)
    }

    fn biword(&self) -> Result<MatrixBar, Fail> {
        let n = self.cli.n.unwrap_or(3);
        if let Some(seed) = self.cli.seed {
            return Ok(gen::matrix(&mut gen::rng(seed), n, self.cli.cells, -2, 2));
        }
        let v = self.json_input()?;
        parse_biword(&v, self.cli.n)
    }

    fn emit(&self, v: Value, text: impl FnOnce() -> String) {
        let s = match self.cli.format {
            Format::Json => serde_json::to_string_pretty(&v).expect("json") + "\n",
            Format::Text => text(),
        };
        // A closed pipe downstream is not an error here.
        let _ = std::io::stdout().lock().write_all(s.as_bytes());
    }

    fn emit_pair(&self, p: &TableauPair) {
        self.emit(p.to_json_value(), || pair_text(p));
    }
}

fn parse_pair(s: &str) -> Result<TableauPair, Fail> {
    if s.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(s).map_err(|e| Fail::Usage(format!("line {}: {e}", e.line())))?;
        return Ok(TableauPair::from_json_value(&v)?);
    }
    let lines: Vec<&str> = s.lines().collect();
    let sep = lines
        .iter()
        .position(|l| l.trim() == "---")
        .ok_or_else(|| Fail::Usage("expected two tableaux separated by a `---` line".into()))?;
    let p = SkewTableau::parse_text(&lines[..sep].join("\n"))?;
    let q = SkewTableau::parse_text(&lines[sep + 1..].join("\n")).map_err(|e| match e {
        Error::Parse { line, msg } => Fail::Usage(format!("parse error at line {}: {msg}", line + sep + 1)),
        e => e.into(),
    })?;
    Ok(TableauPair::new(p, q)?)
}

fn pair_text(p: &TableauPair) -> String {
    format!("{}---\n{}", p.p.to_text(), p.q.to_text())
}

/// A JSON array of `[q, p, w]` triples, or a matrix object with `entries`.
fn parse_biword(v: &Value, n: Option<u32>) -> Result<MatrixBar, Fail> {
    if v.is_object() {
        return Ok(MatrixBar::from_json_value(v)?);
    }
    let max = v
        .as_array()
        .map(|a| a.iter().filter_map(|t| t.as_array()).flat_map(|t| t.iter().take(2).filter_map(|x| x.as_u64())).max().unwrap_or(1))
        .unwrap_or(1) as u32;
    Ok(WeightedBiword::from_json_value(n.unwrap_or(max), v)?.to_matrix())
}

fn biword_json(m: &MatrixBar) -> Value {
    WeightedBiword::from_matrix(m).to_json_value()
}

fn image_text(img: &UpsilonImage) -> String {
    format!("V = {}\nW = {}\nkappa = {:?}\nnu = {}\n", img.v, img.w, img.kappa.values, img.nu)
}

fn run(ctx: &Ctx) -> Out {
    let cap = ctx.cli.cap;
    match &ctx.cli.verb {
        Verb::Rsk { inverse } => {
            let p = ctx.pair()?;
            ctx.emit_pair(&if *inverse { skew_rsk_inverse(&p) } else { skew_rsk(&p) });
        }
        Verb::Iota { which, inverse } => {
            let p = ctx.pair()?;
            let f = match (which, inverse) {
                (1, false) => iota1,
                (1, true) => iota1_inverse,
                (_, false) => iota2,
                (_, true) => iota2_inverse,
            };
            ctx.emit_pair(&f(&p));
        }
        Verb::Dynamics { steps } => ctx.emit_pair(&run_dynamics(&ctx.pair()?, *steps)),
        Verb::Stabilize { backward } => {
            let p = ctx.pair()?;
            if *backward {
                let (t, pair, v, w) = stabilize_backward(&p, cap)?;
                ctx.emit(json!({"t": t, "pair": pair, "V": v, "W": w}), || {
                    format!("t = {t}\nV = {v}\nW = {w}\n{}", pair_text(&pair))
                });
            } else {
                let s = stabilize_forward(&p, cap)?;
                ctx.emit(serde_json::to_value(&s).expect("json"), || {
                    format!("t = {}\nmu = {}\nV = {}\nW = {}\n{}", s.t, s.mu, s.v, s.w, pair_text(&s.pair))
                });
            }
        }
        Verb::Ss { forward } => {
            if *forward {
                let v = ctx.json_input()?;
                let m = parse_biword(v.get("biword").unwrap_or(&Value::Null), v.get("n").and_then(|n| n.as_u64()).map(|n| n as u32).or(ctx.cli.n))?;
                let nu: Vec<usize> = serde_json::from_value(v.get("nu").cloned().unwrap_or(json!([]))).map_err(|e| Fail::Usage(e.to_string()))?;
                ctx.emit_pair(&ss_forward(&m, &Partition::new(nu)?)?);
            } else {
                let p = ctx.pair()?;
                let (m, nu) = ss_backward(&p, cap)?;
                let v = json!({"n": p.n(), "biword": biword_json(&m), "nu": nu.parts()});
                ctx.emit(v.clone(), || format!("{v}\n"));
            }
        }
        Verb::Viennot { steps } => {
            let m = viennot_dynamics(&ctx.biword()?, *steps)?;
            let v = biword_json(&m);
            ctx.emit(v.clone(), || format!("{v}\n"));
        }
        Verb::Greene => {
            let m = ctx.biword()?;
            let (inc, dec) = (mu_from_increasing(&m, cap)?, mu_from_decreasing(&m, cap)?);
            let (i, d) = (i_all(&m, cap)?, d_all(&m, cap)?);
            let g: Vec<usize> = (1..=inc.len()).map(|k| g_k(&m, k, cap)).collect::<Result<_, _>>()?;
            ctx.emit(json!({"I": i, "D": d, "G": g, "mu": inc.parts(), "mu_from_D": dec.parts()}), || {
                format!("I = {i:?}\nD = {d:?}\nG = {g:?}\nmu = {inc}\n")
            });
            if inc != dec {
                return Err(Fail::Violated(format!("shape from I_k {inc} differs from shape from D_k {dec}")));
            }
        }
        Verb::Crystal { ops, biword } => {
            let ops: OpSequence = ops.parse()?;
            if *biword {
                let m = apply_op_sequence(&ctx.biword()?, &ops)?;
                let v = biword_json(&m);
                ctx.emit(v.clone(), || format!("{v}\n"));
            } else {
                ctx.emit_pair(&apply_op_sequence(&ctx.pair()?, &ops)?);
            }
        }
        Verb::Rmatrix { left, right, third } => {
            let n = ctx.cli.n.unwrap_or_else(|| left.iter().chain(right).chain(third.iter().flatten()).copied().max().unwrap_or(1));
            for col in [Some(left), Some(right), third.as_ref()].into_iter().flatten() {
                if col.windows(2).any(|w| w[0] >= w[1]) || col.iter().any(|&l| l == 0 || l > n) {
                    return Err(Fail::Usage(format!("column {col:?} must be strictly increasing in 1..={n}")));
                }
            }
            let (a, b, e) = combinatorial_r(left, right);
            let yb = third.as_ref().map(|c| yang_baxter_check(left, right, c, n));
            ctx.emit(json!({"left": a, "right": b, "energy": e, "braid": yb}), || {
                let mut s = format!("{a:?} ⊗ {b:?}\nenergy = {e}\n");
                if let Some(ok) = yb {
                    s.push_str(&format!("braid relation: {}\n", if ok { "holds" } else { "fails" }));
                }
                s
            });
            if yb == Some(false) {
                return Err(Fail::Violated("braid relation fails".into()));
            }
        }
        Verb::Upsilon => {
            let img = upsilon(&ctx.pair()?, cap)?;
            ctx.emit(img.to_json_value(), || image_text(&img));
        }
        Verb::UpsilonInv => {
            let img = UpsilonImage::from_json_value(&ctx.json_input()?)?;
            ctx.emit_pair(&upsilon_inverse(&img)?);
        }
        Verb::Scattering { t } => {
            let p = ctx.pair()?;
            let cons = conservation_check(&p, cap)?;
            let evac = evacuation_check(&p, cap)?;
            let rep = phase_shift_verify(&p, *t, cap)?;
            let ok = rep.all_match();
            ctx.emit(json!({"conservation": cons, "evacuation": evac, "phase_shift": ok, "report": rep}), || {
                let mut s = format!("conservation: {cons}\nevacuation: {evac}\nmu = {}, t = {}\n", rep.mu, rep.t);
                for c in &rep.columns {
                    s.push_str(&format!("column {} (height {}): observed {}, predicted {}\n", c.column, c.height, c.observed, c.predicted));
                }
                s
            });
            if !(cons && evac && ok) {
                return Err(Fail::Violated("scattering check failed".into()));
            }
        }
        Verb::Knuth { word, dual } => {
            let w = parse_weighted_word(word)?;
            let n = ctx.cli.n.unwrap_or_else(|| w.iter().map(|l| l.a).max().unwrap_or(1));
            let moves = if *dual { gen_dual_knuth_neighbors(&w)? } else { gen_knuth_neighbors(&w) };
            let rep = invariance_suite(&w, n, *dual, cap)?;
            let words: Vec<String> = moves.iter().map(|m| format_weighted_word(&m.word)).collect();
            ctx.emit(json!({"neighbors": moves, "report": rep}), || {
                let mut s: String = moves.iter().zip(&words).map(|(m, w)| format!("move {}: {w}\n", m.kind)).collect();
                s.push_str(&format!("{} neighbors, {} tableau failures, {} Greene failures\n", rep.neighbors, rep.tableau_failures, rep.greene_failures));
                s
            });
            if !rep.ok() {
                return Err(Fail::Violated(format!("invariance fails: {rep:?}")));
            }
        }
        Verb::Verify { identity, deg, qdeg, zdeg, k, z } => {
            let n = ctx.cli.n.unwrap_or(2) as usize;
            let bounds = Bounds { xy: *deg, q: *qdeg, z: zdeg.unwrap_or(3 * deg) };
            let rep = verify_identity(*identity, IdentityParams { n, k: *k, z: *z }, bounds, cap)?;
            ctx.emit(rep.to_json(), || {
                let mut s = format!("{}: {}\n", identity.name(), if rep.holds() { "equal" } else { "NOT equal" });
                for side in &rep.sides {
                    s.push_str(&format!("  {}: {} terms\n", side.name, side.terms));
                }
                s.push_str(&format!("  {} bijective instances, {} slices\n", rep.instances, rep.slices));
                if let Some(m) = &rep.mismatch {
                    s.push_str(&format!("  first difference at {}: {} vs {}\n", m.monomial, m.left_coeff, m.right_coeff));
                }
                s
            });
            if !rep.holds() {
                return Err(Fail::Violated(format!("{} does not hold", identity.name())));
            }
        }
        Verb::Golden => {
            let out = golden::run_all();
            let bad = out.iter().filter(|o| !o.ok).count();
            let v: Vec<Value> = out.iter().map(|o| json!({"name": o.name, "ok": o.ok, "detail": o.detail})).collect();
            ctx.emit(json!(v), || {
                out.iter().map(|o| format!("{} {}{}\n", if o.ok { "ok  " } else { "FAIL" }, o.name, if o.ok { String::new() } else { format!(": {}", o.detail) })).collect()
            });
            if bad > 0 {
                return Err(Fail::Violated(format!("{bad} golden examples differ")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&Ctx { cli }) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Violated(m)) => {
            eprintln!("violated: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
