//! Command-line front end. [`run`] is the whole program minus process plumbing,
//! so it can be driven from tests.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use ssa_core::analysis::{self, Limits};
use ssa_core::schreier;
use ssa_core::{examples, Automaton, Group, Letter};

use crate::{dot, json as doc, report};

#[derive(Debug, Parser)]
#[command(name = "ssa", version, about = "Finite invertible automata acting on rooted trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct Source {
    /// Built-in example name (see `ssa examples list`)
    #[arg(long)]
    pub example: Option<String>,
    /// Automaton JSON document
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Read the automaton JSON document from standard input
    #[arg(long)]
    pub stdin: bool,
}

#[derive(Debug, Clone, Args)]
#[group(id = "right", required = true, multiple = false)]
pub struct RightSource {
    /// Built-in example used as the right factor
    #[arg(long)]
    pub right_example: Option<String>,
    /// Automaton JSON document used as the right factor
    #[arg(long)]
    pub right_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[command(flatten)]
    pub source: Source,
    /// Replace the input by the automaton on its nucleus
    #[arg(long)]
    pub nuclear: bool,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, default_value_t = 512)]
    pub max_elements: usize,
    #[arg(long, default_value_t = 12)]
    pub max_len: usize,
    #[arg(long, default_value_t = 8)]
    pub search_len: usize,
    #[arg(long, default_value_t = 100_000)]
    pub level_cap: usize,
    /// Accepted for scripts; every command is deterministic anyway
    #[arg(long)]
    pub seedless: bool,
}

impl Common {
    fn limits(&self) -> Limits {
        Limits {
            max_elements: self.max_elements,
            max_len: self.max_len,
            search_len: self.search_len,
            level_cap: self.level_cap,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Level {
    #[arg(long)]
    pub level: usize,
}

#[derive(Debug, Clone, Args)]
pub struct Tiles {
    /// Ambient level m
    #[arg(long)]
    pub level: usize,
    /// Tile level n ≤ m
    #[arg(long)]
    pub tile_level: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dual automaton
    Dual(#[command(flatten)] Common),
    /// Product with a second automaton (the input acts first)
    Product {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        right: RightSource,
    },
    /// n-th power
    Power {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
    },
    /// Image and restriction of a group word on an input word
    Act {
        #[command(flatten)]
        common: Common,
        /// Group word such as `a·b^-1`
        #[arg(long)]
        word: String,
        /// Letters, concatenated (or comma-separated for long letter names)
        #[arg(long)]
        input: String,
    },
    /// Merge states with the same action
    Minimize(#[command(flatten)] Common),
    /// Square-tile picture
    TilesAscii(#[command(flatten)] Common),
    /// Whether every state permutes the letters
    Invertible(#[command(flatten)] Common),
    /// Nucleus closure report
    Nucleus(#[command(flatten)] Common),
    /// Whether the state set is its own nucleus
    Nuclear(#[command(flatten)] Common),
    /// Smoothness: τ onto and a strongly connected trivial-restriction letter graph
    Smooth(#[command(flatten)] Common),
    /// Expansion rule (e, v, w) when one exists
    ExpansionRule(#[command(flatten)] Common),
    /// Whether every state can restrict to the identity
    OpenSet(#[command(flatten)] Common),
    /// Search for products of restricted stabilizer generators hitting each generator
    Recurrent(#[command(flatten)] Common),
    /// Transitivity on levels 1..=max-level
    Transitive {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        max_level: usize,
    },
    /// Levels needed before every restriction of a word lies in the nucleus
    RestrictionDepth {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 32)]
        max_depth: usize,
    },
    /// Order of the group induced on a level
    QuotientOrder {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        level: Level,
    },
    /// Schreier graph on a level, one edge per vertex and state
    Schreier {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        level: Level,
    },
    /// Graph of the level-th power of the dual, on words
    DualPower {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        level: Level,
    },
    /// Map from level+1 to level dropping the last letter
    Covering {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        level: Level,
    },
    /// Map from level+1 to level dropping the first letter
    Projection {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        level: Level,
    },
    /// Level cut into tiles by suffix, with critical edges
    TilePartition {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        tiles: Tiles,
    },
    /// Which tiles touch, through critical edges
    TileAdjacency {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        tiles: Tiles,
    },
    /// Whether each tile is connected without critical edges
    TileConnectivity {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        tiles: Tiles,
    },
    /// Component of a word in its level's Schreier graph
    Orbit {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        base: String,
    },
    /// Built-in examples
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExamplesAction {
    List {
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Print an example's automaton document
    Dump {
        name: String,
        /// Dump the automaton on the nucleus instead
        #[arg(long)]
        nuclear: bool,
    },
}

/// What the process should do: exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    exit: i32,
    code: String,
    message: String,
    context: Value,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            exit: 2,
            code: "usage".into(),
            message: message.into(),
            context: Value::Null,
        }
    }

    fn domain(code: &str, message: impl Into<String>) -> Self {
        Failure {
            exit: 1,
            code: code.into(),
            message: message.into(),
            context: Value::Null,
        }
    }
}

impl From<ssa_core::Error> for Failure {
    fn from(e: ssa_core::Error) -> Self {
        Failure::domain(e.code(), e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

/// Alternative renderings of one result.
struct Rendered {
    json: Value,
    text: Option<String>,
    dot: Option<String>,
    default: Format,
}

impl Rendered {
    fn json(json: Value) -> Self {
        Rendered {
            json,
            text: None,
            dot: None,
            default: Format::Json,
        }
    }

    fn text(mut self, text: impl Into<String>) -> Self {
        self.text = Some(text.into());
        self
    }

    fn dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }

    fn text_by_default(mut self) -> Self {
        self.default = Format::Text;
        self
    }

    fn emit(self, format: Option<Format>) -> Res<String> {
        let format = format.unwrap_or(self.default);
        let missing = |name: &str| Failure::usage(format!("this command has no {name} output"));
        match format {
            Format::Json => Ok(pretty(&self.json)),
            Format::Text => self.text.map(with_newline).ok_or_else(|| missing("text")),
            Format::Dot => self.dot.ok_or_else(|| missing("dot")),
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let command_name = args
        .get(1)
        .map(|a| a.to_string_lossy().into_owned())
        .unwrap_or_default();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut warnings = String::new();
    match execute(&cli.command, stdin, &mut warnings) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: warnings,
        },
        Err(mut f) => {
            if f.context.is_null() {
                f.context = json!({ "command": command_name });
            } else if let Value::Object(map) = &mut f.context {
                map.insert("command".into(), json!(command_name));
            }
            let mut stderr = warnings;
            stderr.push_str(&pretty(&json!({
                "code": f.code,
                "message": f.message,
                "context": f.context,
            })));
            Outcome {
                code: f.exit,
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn read_source(source: &Source, stdin: &mut dyn Read) -> Res<Automaton> {
    if let Some(name) = &source.example {
        return Ok(examples::build(name)?.automaton);
    }
    let text = if let Some(path) = &source.file {
        std::fs::read_to_string(path).map_err(|e| Failure {
            exit: 1,
            code: "io".into(),
            message: format!("cannot read {}: {e}", path.display()),
            context: json!({"file": path.display().to_string()}),
        })?
    } else {
        let mut text = String::new();
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Failure::domain("io", format!("cannot read standard input: {e}")))?;
        text
    };
    Ok(doc::parse_automaton(&text)?)
}

fn nuclear_form(a: &Automaton, limits: &Limits) -> Res<Automaton> {
    let r = analysis::nucleus(a, limits)?;
    r.nuclear_automaton.ok_or_else(|| {
        let mut f = Failure::domain(
            "not_contracting",
            "the nucleus closure exceeded its bounds, so there is no nuclear automaton",
        );
        f.context = json!({"witness": r.witness.map(|w| w.description())});
        f
    })
}

fn load(common: &Common, stdin: &mut dyn Read) -> Res<Automaton> {
    let a = read_source(&common.source, stdin)?;
    if common.nuclear {
        nuclear_form(&a, &common.limits())
    } else {
        Ok(a)
    }
}

/// Letters given by name: characters, or comma-separated names when some name
/// is longer than one character.
fn parse_letters(a: &Automaton, text: &str) -> Res<Vec<Letter>> {
    let names = a.letter_names();
    let lookup = |token: &str| {
        names.iter().position(|n| n == token).ok_or_else(|| {
            Failure::domain("parse", format!("unknown letter `{token}`"))
        })
    };
    if text.is_empty() {
        return Ok(Vec::new());
    }
    if names.iter().all(|n| n.chars().count() == 1) && !text.contains(',') {
        text.chars().map(|c| lookup(&c.to_string())).collect()
    } else {
        text.split(',').map(|t| lookup(t.trim())).collect()
    }
}

fn automaton_output(a: &Automaton) -> Rendered {
    // the plain document, so the result can be piped back in
    Rendered {
        json: report::automaton(a),
        text: Some(a.render_square_tiles()),
        dot: Some(dot::graph("automaton", &a.graph())),
        default: Format::Json,
    }
}

fn flag(kind: &str, key: &str, value: bool) -> Rendered {
    Rendered::json(report::tagged(kind, json!({ key: value }))).text(value.to_string())
}

fn graph_output(kind: &str, g: &ssa_core::LabeledGraph) -> Rendered {
    let text: String = g
        .keyed_edges()
        .map(|(s, t, l)| format!("{s} -{l}-> {t}\n"))
        .collect();
    Rendered::json(report::tagged(kind, report::graph(g)))
        .text(text)
        .dot(dot::graph(kind, g))
}

fn warn_unless_nuclear(a: &Automaton, limits: &Limits, warnings: &mut String) -> Res<()> {
    if !analysis::is_nuclear(a, limits)? {
        warnings.push_str(
            "warning: the automaton is not nuclear; tiles are computed on it as given (try --nuclear)\n",
        );
    }
    Ok(())
}

fn execute(command: &Command, stdin: &mut dyn Read, warnings: &mut String) -> Res<String> {
    use Command::*;
    let (rendered, format) = match command {
        Dual(c) => (automaton_output(&load(c, stdin)?.dual()), c.format),
        Product { common, right } => {
            let left = load(common, stdin)?;
            let right = match (&right.right_example, &right.right_file) {
                (Some(name), _) => examples::build(name)?.automaton,
                (None, Some(path)) => read_source(
                    &Source {
                        example: None,
                        file: Some(path.clone()),
                        stdin: false,
                    },
                    stdin,
                )?,
                (None, None) => unreachable!("clap requires a right factor"),
            };
            (automaton_output(&left.product(&right)?), common.format)
        }
        Power { common, n } => (automaton_output(&load(common, stdin)?.power(*n)?), common.format),
        Act {
            common,
            word,
            input,
        } => {
            let a = load(common, stdin)?;
            let letters = parse_letters(&a, input)?;
            let group = Group::new(a.clone())?;
            let g = group.parse(word)?;
            let image = group.act(&g, &letters)?;
            let restriction = group.reduce(&group.restrict(&g, &letters));
            let key = schreier::word_key(&a, &image);
            let r = Rendered::json(report::tagged(
                "act",
                json!({
                    "word": group.format(&g),
                    "input": schreier::word_key(&a, &letters),
                    "output": key,
                    "restriction": group.format(&restriction),
                }),
            ))
            .text(key)
            .text_by_default();
            (r, common.format)
        }
        Minimize(c) => (automaton_output(&load(c, stdin)?.minimize().0), c.format),
        TilesAscii(c) => {
            let a = load(c, stdin)?;
            let tiles: Vec<Value> = a
                .square_tiles()
                .into_iter()
                .map(|t| json!({"bottom": t.bottom, "left": t.left, "top": t.top, "right": t.right}))
                .collect();
            let r = Rendered::json(report::tagged("tiles", json!({ "tiles": tiles })))
                .text(a.render_square_tiles())
                .text_by_default();
            (r, c.format)
        }
        Invertible(c) => (flag("invertible", "invertible", load(c, stdin)?.is_invertible()), c.format),
        Nucleus(c) => {
            let a = load(c, stdin)?;
            let r = analysis::nucleus(&a, &c.limits())?;
            let text = match &r.witness {
                None => r.nucleus.iter().map(|e| format!("{}\n", e.name)).collect(),
                Some(w) => format!("exceeded bound: {}", w.description()),
            };
            (Rendered::json(report::nucleus(&r)).text(text), c.format)
        }
        Nuclear(c) => {
            let a = load(c, stdin)?;
            (flag("nuclear", "nuclear", analysis::is_nuclear(&a, &c.limits())?), c.format)
        }
        Smooth(c) => {
            let a = load(c, stdin)?;
            let (with_identity, _) = a.ensure_identity();
            let letters = analysis::epsilon_letter_graph(&with_identity);
            let smooth = analysis::is_smooth(&a);
            let r = Rendered::json(report::tagged(
                "smooth",
                json!({
                    "smooth": smooth,
                    "tau_onto": analysis::check_tau_onto(&with_identity),
                    "letter_graph": report::graph(&letters),
                }),
            ))
            .text(smooth.to_string())
            .dot(dot::graph("letters", &letters));
            (r, c.format)
        }
        ExpansionRule(c) => {
            let a = load(c, stdin)?;
            let rule = analysis::expansion_rule(&a);
            let text = match &rule {
                None => "absent".to_string(),
                Some(rule) => {
                    let aut = &rule.automaton;
                    let mut s = String::new();
                    for q in 0..aut.state_count() {
                        s.push_str(&format!(
                            "e[{}] = {}, v[{}] = {}\n",
                            aut.state_name(q),
                            aut.letter_name(rule.e[q]),
                            aut.state_name(q),
                            aut.state_name(rule.v[q])
                        ));
                    }
                    for x in 0..aut.alphabet_size() {
                        for y in 0..aut.alphabet_size() {
                            let w: Vec<&str> =
                                rule.word(x, y).iter().map(|&q| aut.state_name(q)).collect();
                            s.push_str(&format!(
                                "w[{},{}] = {}\n",
                                aut.letter_name(x),
                                aut.letter_name(y),
                                if w.is_empty() { "ε".to_string() } else { w.join("·") }
                            ));
                        }
                    }
                    s
                }
            };
            (Rendered::json(report::expansion_rule(rule.as_ref())).text(text), c.format)
        }
        OpenSet(c) => (
            flag("open_set", "open_set", analysis::open_set_condition(&load(c, stdin)?)),
            c.format,
        ),
        Recurrent(c) => {
            let a = load(c, stdin)?;
            let r = analysis::recurrence(&a, c.search_len)?;
            let group = Group::new(a)?;
            let text = format!("{:?}", r.status).to_lowercase();
            (Rendered::json(report::recurrence(&group, &r)).text(text), c.format)
        }
        Transitive { common, max_level } => {
            let a = load(common, stdin)?;
            let levels = analysis::spherical_transitivity(&a, *max_level, common.level_cap)?;
            let text: String = levels
                .iter()
                .enumerate()
                .map(|(i, t)| format!("{} {t}\n", i + 1))
                .collect();
            let entries: Vec<Value> = levels
                .iter()
                .enumerate()
                .map(|(i, t)| json!({"level": i + 1, "transitive": t}))
                .collect();
            let r = Rendered::json(report::tagged(
                "transitive",
                json!({"levels": entries, "all": levels.iter().all(|&t| t)}),
            ))
            .text(text);
            (r, common.format)
        }
        RestrictionDepth {
            common,
            word,
            max_depth,
        } => {
            let a = load(common, stdin)?;
            let r = analysis::nucleus(&a, &common.limits())?;
            if !r.is_contracting() {
                return Err(Failure::domain(
                    "not_contracting",
                    "the nucleus closure exceeded its bounds",
                ));
            }
            let group = Group::new(a)?;
            let g = group.parse(word)?;
            let depth = analysis::restriction_depth(&group, &g, &r.words(), *max_depth)?;
            let text = match depth {
                analysis::Depth::Finite(n) => n.to_string(),
                analysis::Depth::Unbounded(cap) => format!("unbounded after {cap}"),
            };
            (Rendered::json(report::depth(&group.format(&g), depth)).text(text), common.format)
        }
        QuotientOrder { common, level } => {
            let a = load(common, stdin)?;
            let order = analysis::level_quotient_order(&a, level.level, common.level_cap)?;
            let r = Rendered::json(report::tagged(
                "quotient_order",
                json!({"level": level.level, "order": order.to_string()}),
            ))
            .text(order.to_string());
            (r, common.format)
        }
        Schreier { common, level } => {
            let a = load(common, stdin)?;
            let s = schreier::schreier_graph(&a, level.level, common.level_cap)?;
            let mut r = graph_output("schreier", &s.graph);
            r.json = report::schreier(&a, &s);
            (r, common.format)
        }
        DualPower { common, level } => {
            let a = load(common, stdin)?;
            let g = schreier::dual_power_graph(&a, level.level, common.level_cap)?;
            (graph_output("dual_power", &g), common.format)
        }
        Covering { common, level } | Projection { common, level } => {
            let a = load(common, stdin)?;
            let map = if matches!(command, Covering { .. }) {
                schreier::covering_map(&a, level.level, common.level_cap)?
            } else {
                schreier::projection_map(&a, level.level, common.level_cap)?
            };
            let text = format!(
                "morphism {}\nunique lifts {}\n",
                map.is_morphism(),
                map.has_unique_lifts()
            );
            (Rendered::json(report::level_map(&map)).text(text), common.format)
        }
        TilePartition { common, tiles } => {
            let a = load(common, stdin)?;
            warn_unless_nuclear(&a, &common.limits(), warnings)?;
            let p = schreier::tile_partition(&a, tiles.level, tiles.tile_level, common.level_cap)?;
            let r = Rendered::json(report::tile_partition(&p)).dot(dot::tiles("tiles", &p));
            (r, common.format)
        }
        TileAdjacency { common, tiles } => {
            let a = load(common, stdin)?;
            warn_unless_nuclear(&a, &common.limits(), warnings)?;
            let g = schreier::tile_adjacency(&a, tiles.level, tiles.tile_level, common.level_cap)?;
            (graph_output("tile_adjacency", &g), common.format)
        }
        TileConnectivity { common, tiles } => {
            let a = load(common, stdin)?;
            warn_unless_nuclear(&a, &common.limits(), warnings)?;
            let p = schreier::tile_partition(&a, tiles.level, tiles.tile_level, common.level_cap)?;
            let flags = p.connectivity();
            let entries: Vec<Value> = p
                .classes
                .iter()
                .zip(&flags)
                .map(|((suffix, _), c)| json!({"suffix": suffix, "connected": c}))
                .collect();
            let text: String = p
                .classes
                .iter()
                .zip(&flags)
                .map(|((suffix, _), c)| format!("{suffix} {c}\n"))
                .collect();
            let r = Rendered::json(report::tagged(
                "tile_connectivity",
                json!({"tiles": entries, "all": flags.iter().all(|&c| c)}),
            ))
            .text(text);
            (r, common.format)
        }
        Orbit { common, base } => {
            let a = load(common, stdin)?;
            let letters = parse_letters(&a, base)?;
            let g = schreier::orbit_schreier(&a, &letters, common.level_cap)?;
            (graph_output("orbit", &g), common.format)
        }
        Examples { action } => match action {
            ExamplesAction::List { format } => {
                let r = Rendered::json(json!(examples::list()))
                    .text(examples::list().join("\n"));
                (r, *format)
            }
            ExamplesAction::Dump { name, nuclear } => {
                let entry = examples::build(name)?;
                let a = if *nuclear {
                    nuclear_form(&entry.automaton, &Limits::default())?
                } else {
                    entry.automaton
                };
                return Ok(doc::automaton_to_string(&a));
            }
        },
    };
    rendered.emit(format)
}
