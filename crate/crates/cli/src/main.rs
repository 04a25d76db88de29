use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use betauto::automata::Automaton;
use betauto::numfield::config::ContextConfig;
use betauto::numfield::BetaContext;
use betauto::oracle;
use betauto::parse::{parse_int_poly, parse_word, render_word, verify_identity};
use betauto::reducer::{words_equivalent, ReducerTable};
use betauto::relations::{
    build_relation_automaton, kenyon_criterion, mahler_nonfree_check, quick_free_sufficient, transcendental_bounds,
    verify_relation, BuildStats, Caps, Freeness, RelAutomaton, RelationError,
};
use betauto::structure::{build_structure, growth, Order, DEFAULT_GROWTH_TERMS};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "betauto", version, about = "Relation automata and automatic structures of β-adic affine semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the relation automaton; writes relations.json, relations.dot and summary.json.
    Relations(Common),
    /// Build reduced words, multipliers and growth; writes reduced.*, mult_<g>.* and growth.json.
    Structure {
        #[command(flatten)]
        common: Common,
        /// Number of growth terms.
        #[arg(long, default_value_t = DEFAULT_GROWTH_TERMS)]
        n: usize,
        /// Candidate minimal polynomial of the growth rate, e.g. "x^2-3x+1".
        #[arg(long)]
        pi: Option<String>,
    },
    /// Print the reduced representative of a word.
    Reduce {
        #[command(flatten)]
        common: Common,
        word: String,
    },
    /// Decide whether two words define the same map.
    Equiv {
        #[command(flatten)]
        common: Common,
        u: String,
        v: String,
    },
    /// Freeness verdict from the automaton and the quick criteria.
    Free(Common),
    /// Exact check of a word relation `U V` or of an identity in β.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Identity such as "β^-2 + β^-3 = 1", checked instead of a word pair.
        #[arg(long, conflicts_with_all = ["u", "v"])]
        identity: Option<String>,
        #[arg(requires = "v")]
        u: Option<String>,
        v: Option<String>,
    },
    /// Brute-force cross-checks of every automaton up to word length n.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Random word pairs checked beyond length n.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex,
    Revlex,
}

#[derive(Args)]
struct Common {
    /// Context config (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory for written files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "lex")]
    order: OrderArg,
    #[arg(long, default_value_t = Caps::default().max_states)]
    max_states: usize,
    #[arg(long, default_value_t = Caps::default().max_depth)]
    max_depth: usize,
    /// Decimal digits for root isolation; overrides the config.
    #[arg(long)]
    precision: Option<u32>,
    /// Attempt the construction even with a conjugate on the unit circle.
    #[arg(long)]
    force: bool,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

enum Failure {
    /// Bad input; exit 1.
    Input(String),
    /// Construction refused or stopped; exit 2.
    Stopped(String),
}

impl From<RelationError> for Failure {
    fn from(e: RelationError) -> Self {
        match e {
            RelationError::Blocked | RelationError::CapExceeded { .. } => Failure::Stopped(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

fn input<E: ToString>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

impl Common {
    fn order(&self) -> Order {
        match self.order {
            OrderArg::Lex => Order::Lex,
            OrderArg::Revlex => Order::RevLex,
        }
    }

    fn caps(&self) -> Caps {
        Caps { max_states: self.max_states, max_depth: self.max_depth, force: self.force, ..Caps::default() }
    }

    fn context(&self) -> Result<BetaContext, Failure> {
        let text = fs::read_to_string(&self.config).map_err(|e| input(format!("{}: {e}", self.config.display())))?;
        ContextConfig::parse(&text).and_then(|c| c.build(self.precision)).map_err(input)
    }

    fn relations(&self, ctx: &BetaContext) -> Result<RelAutomaton, Failure> {
        Ok(build_relation_automaton(ctx, &self.caps())?)
    }

    fn write(&self, name: &str, contents: &str) -> Result<(), Failure> {
        fs::create_dir_all(&self.out).map_err(input)?;
        let path: PathBuf = Path::new(&self.out).join(name);
        fs::write(&path, contents).map_err(|e| input(format!("{}: {e}", path.display())))
    }

    fn word(&self, ctx: &BetaContext, text: &str) -> Result<Vec<usize>, Failure> {
        parse_word(ctx.names(), text).map_err(input)
    }
}

fn stats_json(s: &BuildStats) -> Value {
    json!({"explored": s.explored, "pruned": s.pruned, "depth": s.depth, "unresolved": s.unresolved})
}

fn bounds_json(ctx: &BetaContext) -> Value {
    if ctx.is_algebraic() {
        let bounds: Vec<Value> = ctx
            .prune_bounds()
            .iter()
            .map(|b| {
                let m = ctx.embeddings()[b.embedding].modulus;
                json!({"embedding": b.embedding, "modulus": [m.lo, m.hi], "bound": [b.bound.lo, b.bound.hi]})
            })
            .collect();
        json!({"archimedean": bounds, "inverted": ctx.inverted()})
    } else {
        let (degree, coeffs) = transcendental_bounds(ctx);
        let coeffs: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
        json!({"degree_below": degree, "coefficient_bounds": coeffs})
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value") + "\n"
}

fn cmd_relations(c: &Common) -> Result<(), Failure> {
    let ctx = c.context()?;
    let summary = match build_relation_automaton(&ctx, &c.caps()) {
        Ok(rel) => {
            c.write("relations.json", &(rel.automaton().to_json() + "\n"))?;
            c.write("relations.dot", &rel.automaton().to_dot())?;
            let s = json!({
                "status": "ok",
                "state_count": rel.state_count(),
                "free": rel.is_free(),
                "stats": stats_json(&rel.stats()),
                "bounds": bounds_json(&ctx),
            });
            c.write("summary.json", &pretty(&s))?;
            if c.json {
                print!("{}", pretty(&s));
            } else {
                println!("{} states, {}", rel.state_count(), if rel.is_free() { "free" } else { "not free" });
            }
            return Ok(());
        }
        Err(RelationError::Blocked) => json!({
            "status": "blocked",
            "reason": "conjugate on the unit circle",
            "bounds": bounds_json(&ctx),
        }),
        Err(RelationError::CapExceeded { kind, stats }) => json!({
            "status": "capped",
            "cap": format!("{kind:?}").to_lowercase(),
            "stats": stats_json(&stats),
            "conclusive": false,
            "note": "the cap was reached; this does not prove that the relation automaton is infinite",
            "bounds": bounds_json(&ctx),
        }),
        Err(e) => return Err(e.into()),
    };
    c.write("summary.json", &pretty(&summary))?;
    if c.json {
        print!("{}", pretty(&summary));
    }
    Err(Failure::Stopped(match summary["status"].as_str() {
        Some("blocked") => RelationError::Blocked.to_string(),
        _ => format!("inconclusive: {}", summary["note"].as_str().unwrap_or_default()),
    }))
}

fn file_stem_for(name: &str, g: usize) -> String {
    if !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
        format!("mult_{name}")
    } else {
        format!("mult_{g}")
    }
}

fn write_automaton(c: &Common, stem: &str, a: &Automaton) -> Result<(), Failure> {
    c.write(&format!("{stem}.json"), &(a.to_json() + "\n"))?;
    c.write(&format!("{stem}.dot"), &a.to_dot())
}

fn cmd_structure(c: &Common, n: usize, pi: Option<&str>) -> Result<(), Failure> {
    let candidate = pi.map(parse_int_poly).transpose().map_err(input)?;
    let ctx = c.context()?;
    let rel = c.relations(&ctx)?;
    let st = build_structure(&rel, c.order());
    write_automaton(c, "reduced", &st.reduced)?;
    for (g, m) in st.multipliers.iter().enumerate() {
        write_automaton(c, &file_stem_for(&ctx.names()[g], g), m)?;
    }
    let report = growth(&st.reduced, n, candidate.as_ref());
    let text = report.to_json() + "\n";
    c.write("growth.json", &text)?;
    if c.json {
        print!("{text}");
    } else {
        let counts: Vec<String> = report.counts.iter().take(8).map(|x| x.to_string()).collect();
        println!("reduced words: {} states; counts {}, ...", st.reduced.state_count(), counts.join(", "));
        println!("growth rate in [{:.10}, {:.10}]", report.lambda.lo, report.lambda.hi);
        if let Some(p) = &report.pi_check {
            println!("{}: {}", p.candidate.render("x"), if p.passed() { "certified" } else { "not certified" });
        }
    }
    if report.pi_check.as_ref().is_some_and(|p| !p.passed()) {
        return Err(Failure::Input("candidate polynomial does not certify the growth rate".into()));
    }
    Ok(())
}

fn cmd_reduce(c: &Common, word: &str) -> Result<(), Failure> {
    let ctx = c.context()?;
    let u = c.word(&ctx, word)?;
    let rel = c.relations(&ctx)?;
    let st = build_structure(&rel, c.order());
    let v = ReducerTable::new(&rel, &st).reduce(&u).map_err(input)?;
    let out = render_word(ctx.names(), &v);
    if c.json {
        print!("{}", pretty(&json!({"input": word, "reduced": out})));
    } else {
        println!("{out}");
    }
    Ok(())
}

fn cmd_equiv(c: &Common, u: &str, v: &str) -> Result<(), Failure> {
    let ctx = c.context()?;
    let (wu, wv) = (c.word(&ctx, u)?, c.word(&ctx, v)?);
    let rel = c.relations(&ctx)?;
    let eq = words_equivalent(&rel, &wu, &wv);
    if c.json {
        print!("{}", pretty(&json!({"u": u, "v": v, "equivalent": eq})));
    } else {
        println!("{}", if eq { "equivalent" } else { "distinct" });
    }
    Ok(())
}

fn freeness_name(f: Freeness) -> &'static str {
    match f {
        Freeness::Free => "free",
        Freeness::NonFree => "non-free",
        Freeness::Unknown => "unknown",
    }
}

/// Digits `{0, p, q}` over `x - 3`, as `(p, q)`.
fn base3_digits(ctx: &BetaContext) -> Option<(i64, i64)> {
    let minpoly = ctx.minpoly()?;
    if ctx.inverted() || minpoly.coeffs() != parse_int_poly("x-3").ok()?.coeffs() || ctx.alphabet_size() != 3 {
        return None;
    }
    let mut d: Vec<i64> = Vec::new();
    for p in ctx.input_digits() {
        match p.degree() {
            None => d.push(0),
            Some(0) => d.push(i64::try_from(p.coeff(0)).ok()?),
            Some(_) => return None,
        }
    }
    d.sort_unstable();
    (d[0] == 0 && d[1] > 0).then_some((d[1], d[2]))
}

fn cmd_free(c: &Common) -> Result<(), Failure> {
    let ctx = c.context()?;
    let quick = quick_free_sufficient(&ctx);
    let mahler = mahler_nonfree_check(&ctx);
    let kenyon = base3_digits(&ctx).and_then(|(p, q)| kenyon_criterion(p, q).ok());
    let (automaton, note) = match build_relation_automaton(&ctx, &c.caps()) {
        Ok(rel) => (if rel.is_free() { Freeness::Free } else { Freeness::NonFree }, None),
        Err(e @ (RelationError::Blocked | RelationError::CapExceeded { .. })) => {
            (Freeness::Unknown, Some(e.to_string()))
        }
        Err(e) => return Err(e.into()),
    };
    let mut reasons = Vec::new();
    let mut verdict = Freeness::Unknown;
    for (name, f) in [("automaton", automaton), ("quick-bound", quick), ("mahler<2", mahler)]
        .into_iter()
        .chain(kenyon.map(|k| ("base-3 criterion", k)))
    {
        if f == Freeness::Unknown {
            continue;
        }
        if verdict != Freeness::Unknown && verdict != f {
            return Err(Failure::Input(format!("inconsistent freeness verdicts ({name} says {})", freeness_name(f))));
        }
        verdict = f;
        reasons.push(name);
    }
    if c.json {
        let v = json!({
            "verdict": freeness_name(verdict),
            "reasons": reasons,
            "automaton": freeness_name(automaton),
            "quick_free_sufficient": freeness_name(quick),
            "mahler_nonfree_check": freeness_name(mahler),
            "base3_criterion": kenyon.map(freeness_name),
            "note": note,
        });
        print!("{}", pretty(&v));
    } else if reasons.is_empty() {
        println!("unknown{}", note.map(|n| format!(" ({n})")).unwrap_or_default());
    } else {
        println!("{} ({})", freeness_name(verdict), reasons.join(", "));
    }
    Ok(())
}

fn cmd_verify(c: &Common, identity: Option<&str>, u: Option<&str>, v: Option<&str>) -> Result<(), Failure> {
    let ctx = c.context()?;
    let holds = match (identity, u, v) {
        (Some(text), _, _) => verify_identity(&ctx, text).map_err(input)?,
        (None, Some(u), Some(v)) => verify_relation(&ctx, &c.word(&ctx, u)?, &c.word(&ctx, v)?)?,
        _ => return Err(Failure::Input("give either --identity or two words".into())),
    };
    if c.json {
        print!("{}", pretty(&json!({"holds": holds})));
    } else {
        println!("{holds}");
    }
    Ok(())
}

fn cmd_oracle(c: &Common, n: usize, samples: usize, seed: u64) -> Result<(), Failure> {
    if n > 6 {
        return Err(Failure::Input(format!("oracle enumeration is limited to n <= 6, got {n}")));
    }
    let ctx = c.context()?;
    let rel = c.relations(&ctx)?;
    let st = build_structure(&rel, c.order());
    let report = oracle::run_all(&ctx, &rel, &st, n, samples, seed);
    if c.json {
        print!("{}", pretty(&serde_json::to_value(&report).expect("report serializes")));
    } else {
        for check in &report.checks {
            println!("{} {}: {}", if check.passed { "ok  " } else { "FAIL" }, check.name, check.detail);
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Input("cross-check failed".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Relations(c) => cmd_relations(c),
        Command::Structure { common, n, pi } => cmd_structure(common, *n, pi.as_deref()),
        Command::Reduce { common, word } => cmd_reduce(common, word),
        Command::Equiv { common, u, v } => cmd_equiv(common, u, v),
        Command::Free(c) => cmd_free(c),
        Command::Verify { common, identity, u, v } => {
            cmd_verify(common, identity.as_deref(), u.as_deref(), v.as_deref())
        }
        Command::Oracle { common, n, samples, seed } => cmd_oracle(common, *n, *samples, *seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Stopped(m)) => {
            eprintln!("stopped: {m}");
            ExitCode::from(2)
        }
    }
}
