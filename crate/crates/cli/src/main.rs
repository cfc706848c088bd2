//! `partfan`: command-line pipelines over partitioned fans.
//!
//! Every subcommand reads a JSON document (stdin or `--input`), adds or replaces some of
//! its keys, and writes it back. Reports go under `"result"`.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use partfan::arrangement::{self, arrangement_fan, Arrangement, ArrangementFan};
use partfan::builtins;
use partfan::category::Category;
use partfan::cw::{build_cw, compare_pi1_picture};
use partfan::fan::Fan;
use partfan::io;
use partfan::linalg::q;
use partfan::partition::{enumerate_admissible, potential_identifications, Partition};
use partfan::picture::{self, Mode, QuotientPresentation};
use partfan::poset::{FanPoset, DEFAULT_CHAIN_LIMIT};
use partfan::render;
use partfan::{Error, Result};

#[derive(Parser)]
#[command(name = "partfan", version, about = "Categories of partitioned simplicial fans")]
struct Cli {
    /// Input document; defaults to standard input.
    #[arg(short, long, global = true)]
    input: Option<String>,
    #[arg(short, long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    #[command(subcommand)]
    Fan(FanCmd),
    #[command(subcommand)]
    Partition(PartitionCmd),
    #[command(subcommand)]
    Category(CategoryCmd),
    #[command(subcommand)]
    Poset(PosetCmd),
    #[command(subcommand)]
    Group(GroupCmd),
    #[command(subcommand)]
    Cw(CwCmd),
    #[command(subcommand)]
    Arrangement(ArrangementCmd),
    /// Emit a built-in example document.
    Examples {
        #[arg(value_parser = ["hirzebruch-a1", "square", "three-lines", "brauer3"])]
        name: String,
    },
    /// SVG of the fan: planar fans directly, rank-3 fans by stereographic projection.
    Render {
        /// Projection point for rank-3 fans.
        #[arg(long, default_value = "1,1,1")]
        from: String,
    },
}

#[derive(Subcommand)]
enum FanCmd {
    Validate,
    Complete,
    FromArrangement,
}

#[derive(Subcommand)]
enum PartitionCmd {
    Potentials,
    Check,
    Closure {
        /// Pairs such as `s1~s3,s2~s4` or `[0,1]~[2,3]`.
        #[arg(long)]
        seed: String,
    },
    Meet {
        #[arg(long)]
        other: String,
    },
    Join {
        #[arg(long)]
        other: String,
    },
    Enumerate {
        #[arg(long, default_value_t = partfan::partition::DEFAULT_ENUMERATION_LIMIT)]
        limit: usize,
    },
}

#[derive(Subcommand)]
enum CategoryCmd {
    Build,
    CheckCubical,
    CheckLastFactors,
    Export,
}

#[derive(Subcommand)]
enum PosetCmd {
    Functional {
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    Bisector {
        /// Base chamber, e.g. `[0,3]`.
        #[arg(long)]
        base: String,
    },
    Regions {
        /// A point inside the base region.
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
    },
    Check,
    Nondegenerate,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Full,
    Codim2,
}

#[derive(Subcommand)]
enum GroupCmd {
    Picture {
        #[arg(long, value_enum, default_value_t = ModeArg::Full)]
        mode: ModeArg,
        #[arg(long, default_value_t = DEFAULT_CHAIN_LIMIT)]
        chain_limit: usize,
        /// Also print a GAP construction of the group.
        #[arg(long)]
        gap: bool,
    },
    Alt,
    Psi,
    Quotient {
        /// Document holding the coarser partition.
        #[arg(long)]
        coarse: Option<String>,
        /// Coarser partition as the closure of these seeds.
        #[arg(long)]
        seed: Option<String>,
    },
    Abelianize,
    CertifyRank2,
    CertifyBrauer {
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
    },
}

#[derive(Subcommand)]
enum CwCmd {
    Build,
    Euler,
    Pi1,
    Compare,
}

#[derive(Subcommand)]
enum ArrangementCmd {
    Flats,
    Shards {
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
    },
    ShardPartition {
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
    },
    FlatPartition,
    WallAlgebra {
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
    },
}

struct Doc(Map<String, Value>);

enum Output {
    Doc(Doc),
    Raw(String),
}

impl Doc {
    fn read(path: Option<&str>) -> Result<Doc> {
        let text = match path {
            Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{p}: {e}")))?,
            None => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(e.to_string()))?;
                s
            }
        };
        if text.trim().is_empty() {
            return Ok(Doc(Map::new()));
        }
        match serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))? {
            Value::Object(m) => Ok(Doc(m)),
            _ => Err(Error::Parse("document must be a JSON object".into())),
        }
    }

    fn get(&self, key: &str) -> Option<&Value> {
        self.0.get(key)
    }

    fn set(&mut self, key: &str, v: Value) {
        self.0.insert(key.to_string(), v);
    }

    fn arrangement(&self) -> Result<Option<ArrangementFan>> {
        match self.get("arrangement") {
            Some(a) => Ok(Some(arrangement_fan(&io::arrangement_from_json(a)?)?)),
            None => Ok(None),
        }
    }

    fn require_arrangement(&self) -> Result<ArrangementFan> {
        self.arrangement()?.ok_or_else(|| Error::PreconditionUnmet("no arrangement in input".into()))
    }

    fn fan(&self) -> Result<Fan> {
        if let Some(f) = self.get("fan") {
            return io::fan_from_json(f);
        }
        match self.arrangement()? {
            Some(af) => Ok(af.fan),
            None => Err(Error::PreconditionUnmet("no fan in input".into())),
        }
    }

    /// The document's partition, or the finest one.
    fn partition(&self, fan: &Fan) -> Result<Partition> {
        match self.get("partition") {
            Some(p) => io::partition_from_json(fan, p),
            None => Ok(Partition::finest(fan)),
        }
    }

    fn poset(&self, fan: &Fan) -> Result<FanPoset> {
        if let Some(p) = self.get("poset") {
            return io::poset_from_json(fan, p);
        }
        if let Some(af) = self.arrangement()? {
            let base = base_chamber(&af, self.get("base"), None)?;
            return af.poset_of_regions(base);
        }
        if fan.dim() == 2 {
            let mut fallback = None;
            for c in fan.chambers() {
                let p = FanPoset::bisector(fan, c)?;
                let r = p.check(fan);
                if r.passes() {
                    return Ok(p);
                }
                if r.intervals_ok && fallback.is_none() {
                    fallback = Some(p);
                }
            }
            if let Some(p) = fallback {
                return Ok(p);
            }
        }
        Err(Error::PreconditionUnmet("no poset in input".into()))
    }
}

fn base_chamber(af: &ArrangementFan, stored: Option<&Value>, arg: Option<&str>) -> Result<usize> {
    if let Some(a) = arg {
        return af.chamber_containing(&io::parse_int_list(a)?);
    }
    if let Some(s) = stored {
        return io::face_from_json(&af.fan, s);
    }
    af.chamber_containing(&vec![1; af.fan.dim()])
}

fn example(name: &str) -> Value {
    match name {
        "hirzebruch-a1" => json!({ "fan": io::fan_to_json(&builtins::fan_hzb(1)) }),
        "square" => json!({ "fan": io::fan_to_json(&builtins::fan_sq()) }),
        "three-lines" => json!({ "fan": io::fan_to_json(&builtins::fan_3lines()) }),
        _ => json!({ "arrangement": io::arrangement_to_json(&Arrangement::brauer()) }),
    }
}

fn mode(m: ModeArg) -> Mode {
    match m {
        ModeArg::Full => Mode::Full,
        ModeArg::Codim2 => Mode::Codim2,
    }
}

fn run(cli: &Cli) -> Result<Output> {
    if let Command::Examples { name } = &cli.command {
        let Value::Object(m) = example(name) else { unreachable!() };
        return Ok(Output::Doc(Doc(m)));
    }
    let mut doc = Doc::read(cli.input.as_deref())?;
    match &cli.command {
        Command::Examples { .. } => unreachable!(),
        Command::Render { from } => {
            let fan = doc.fan()?;
            let partition = match doc.get("partition") {
                Some(p) => Some(io::partition_from_json(&fan, p)?),
                None => None,
            };
            let svg = if fan.dim() == 2 {
                render::render_rank2(&fan, partition.as_ref())?
            } else {
                let p: Vec<f64> = io::parse_int_list(from)?.iter().map(|&x| x as f64).collect();
                render::render_stereographic(&fan, partition.as_ref(), &p)?
            };
            return Ok(Output::Raw(svg));
        }
        Command::Fan(cmd) => {
            let fan = doc.fan()?;
            match cmd {
                FanCmd::Validate => {
                    let r = fan.validate();
                    let violations: Vec<Value> = r
                        .violations
                        .iter()
                        .map(|v| {
                            json!({
                                "first": v.first,
                                "second": v.second,
                                "intersection": v.intersection.iter().map(io::ivec_json).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    doc.set(
                        "result",
                        json!({
                            "valid": r.valid,
                            "violations": violations,
                            "rays": fan.rays().len(),
                            "chambers": fan.chambers().len(),
                            "faces": fan.num_faces(),
                        }),
                    );
                }
                FanCmd::Complete => doc.set("result", json!({ "complete": fan.is_finite_complete() })),
                FanCmd::FromArrangement => {}
            }
            doc.set("fan", io::fan_to_json(&fan));
        }
        Command::Partition(cmd) => {
            let fan = doc.fan()?;
            match cmd {
                PartitionCmd::Potentials => {
                    let t = potential_identifications(&fan);
                    let classes: Vec<Value> = t
                        .classes
                        .iter()
                        .map(|c| Value::Array(c.iter().map(|&f| io::cone_json(&fan, f)).collect()))
                        .collect();
                    doc.set("result", json!({ "classes": classes }));
                }
                PartitionCmd::Check => {
                    let p = doc.partition(&fan)?;
                    p.check_possible(&fan, &potential_identifications(&fan))?;
                    let a = p.is_admissible(&fan)?;
                    let witness = a.witness.map(|w| w.iter().map(|&c| io::cone_json(&fan, c)).collect::<Vec<_>>());
                    doc.set("result", json!({ "admissible": a.admissible, "witness": witness }));
                }
                PartitionCmd::Closure { seed } => {
                    let seeds = io::parse_seeds(&fan, seed)?;
                    let p = Partition::closure(&fan, &seeds)?;
                    doc.set("partition", io::partition_to_json(&fan, &p));
                }
                PartitionCmd::Meet { other } | PartitionCmd::Join { other } => {
                    let p = doc.partition(&fan)?;
                    let o = Doc::read(Some(other))?;
                    let q = io::partition_from_json(&fan, o.get("partition").ok_or_else(|| Error::Parse("other.partition".into()))?)?;
                    let r = if matches!(cmd, PartitionCmd::Meet { .. }) { p.meet(&q)? } else { p.join(&q)? };
                    doc.set("partition", io::partition_to_json(&fan, &r));
                }
                PartitionCmd::Enumerate { limit } => {
                    let all = enumerate_admissible(&fan, *limit)?;
                    let list: Vec<Value> = all.iter().map(|p| io::partition_to_json(&fan, p)).collect();
                    doc.set("result", json!({ "count": all.len(), "partitions": list }));
                }
            }
            doc.set("fan", io::fan_to_json(&fan));
        }
        Command::Category(cmd) => {
            let fan = doc.fan()?;
            let cat = Category::new(&fan, &doc.partition(&fan)?)?;
            match cmd {
                CategoryCmd::Build => doc.set("category", io::category_json(&cat)),
                CategoryCmd::CheckCubical => {
                    let r = cat.check_cubical();
                    let v: Vec<Value> = r
                        .violations
                        .iter()
                        .map(|v| json!({ "axiom": v.axiom, "morphisms": v.morphisms, "detail": v.detail }))
                        .collect();
                    doc.set("result", json!({ "passes": r.passes(), "checked": r.checked, "violations": v }));
                }
                CategoryCmd::CheckLastFactors => {
                    let c = cat.check_last_factor_compatibility();
                    doc.set("result", json!({ "compatible": c.compatible, "counterexample": c.counterexample }));
                }
                CategoryCmd::Export => {
                    if cli.format != Format::Json {
                        return Ok(Output::Raw(cat.to_dot()));
                    }
                    doc.set("dot", json!(cat.to_dot()));
                }
            }
        }
        Command::Poset(cmd) => {
            let fan = doc.fan()?;
            match cmd {
                PosetCmd::Functional { b } => {
                    let b: Vec<_> = io::parse_int_list(b)?.into_iter().map(q).collect();
                    let p = FanPoset::from_functional(&fan, &b)?;
                    doc.set("poset", io::poset_to_json(&fan, &p));
                }
                PosetCmd::Bisector { base } => {
                    let p = FanPoset::bisector(&fan, io::parse_cone(&fan, base)?)?;
                    doc.set("poset", io::poset_to_json(&fan, &p));
                }
                PosetCmd::Regions { base } => {
                    let af = doc.require_arrangement()?;
                    let b = base_chamber(&af, doc.get("base"), base.as_deref())?;
                    let p = af.poset_of_regions(b)?;
                    doc.set("base", io::cone_json(&af.fan, b));
                    doc.set("poset", io::poset_to_json(&af.fan, &p));
                }
                PosetCmd::Check => {
                    let p = doc.poset(&fan)?;
                    let r = p.check(&fan);
                    doc.set(
                        "result",
                        json!({
                            "intervals": r.intervals_ok,
                            "interval_witness": r.interval_witness.map(|c| io::cone_json(&fan, c)),
                            "convex": r.convex_ok,
                            "convex_witness": r.convex_witness.map(|(a, b)| json!([fan.face(a), fan.face(b)])),
                            "weak_variant": r.weak_variant,
                        }),
                    );
                }
                PosetCmd::Nondegenerate => {
                    let p = doc.poset(&fan)?;
                    let r = p.check_nondegenerate(&fan, &doc.partition(&fan)?)?;
                    doc.set(
                        "result",
                        json!({ "nondegenerate": r.nondegenerate, "witness": r.witness.map(|(a, b)| json!([fan.face(a), fan.face(b)])) }),
                    );
                }
            }
            doc.set("fan", io::fan_to_json(&fan));
        }
        Command::Group(cmd) => return group(cmd, doc, cli.format),
        Command::Cw(cmd) => {
            let fan = doc.fan()?;
            let p = doc.partition(&fan)?;
            let cw = build_cw(&fan, &p)?;
            match cmd {
                CwCmd::Build => doc.set("cw", io::cw_json(&fan, &p, &cw)),
                CwCmd::Euler => doc.set("result", json!(cw.euler_characteristic())),
                CwCmd::Pi1 => {
                    let pres = cw.pi1_presentation()?;
                    doc.set(
                        "result",
                        json!({
                            "presentation": io::presentation_to_json(&pres),
                            "simplified": io::presentation_to_json(&pres.simplify()),
                            "abelianization": io::abelianization_json(&pres.abelianization()),
                        }),
                    );
                    doc.set("presentation", io::presentation_to_json(&pres));
                }
                CwCmd::Compare => {
                    let poset = doc.poset(&fan)?;
                    let cat = Category::new(&fan, &p)?;
                    let g = picture::picture_group(&cat, &poset, Mode::Codim2, DEFAULT_CHAIN_LIMIT)?;
                    let r = compare_pi1_picture(&cw, &g.presentation)?;
                    doc.set(
                        "result",
                        json!({
                            "match": r.matches(),
                            "generators_match": r.generators_match,
                            "abelian_match": r.abelian_match,
                            "pi1_generators": r.pi1_generators,
                            "picture_generators": r.picture_generators,
                            "pi1_abelianization": io::abelianization_json(&r.pi1_abelian),
                            "picture_abelianization": io::abelianization_json(&r.picture_abelian),
                        }),
                    );
                }
            }
        }
        Command::Arrangement(cmd) => {
            let af = doc.require_arrangement()?;
            let fan = &af.fan;
            match cmd {
                ArrangementCmd::Flats => {
                    let flats = af.arrangement.flats()?;
                    let list: Vec<Value> = flats.iter().map(|f| io::flat_json(&af.arrangement, f)).collect();
                    doc.set("result", json!({ "count": flats.len(), "flats": list }));
                }
                ArrangementCmd::Shards { base } => {
                    let b = base_chamber(&af, doc.get("base"), base.as_deref())?;
                    let shards = af.shards(b)?;
                    doc.set("base", io::cone_json(fan, b));
                    doc.set("result", io::shards_json(fan, &af.arrangement, &shards));
                }
                ArrangementCmd::ShardPartition { base } => {
                    let b = base_chamber(&af, doc.get("base"), base.as_deref())?;
                    let p = af.shard_partition(b)?;
                    doc.set("base", io::cone_json(fan, b));
                    doc.set("partition", io::partition_to_json(fan, &p));
                    doc.set("result", json!({ "admissible": p.is_admissible(fan)?.admissible, "blocks": p.num_blocks() }));
                }
                ArrangementCmd::FlatPartition => {
                    let p = af.flat_partition()?;
                    doc.set("partition", io::partition_to_json(fan, &p));
                    doc.set("result", json!({ "admissible": p.is_admissible(fan)?.admissible, "blocks": p.num_blocks() }));
                }
                ArrangementCmd::WallAlgebra { base } => {
                    let b = base_chamber(&af, doc.get("base"), base.as_deref())?;
                    let r = wall_algebra(&af, b)?;
                    doc.set("result", wa_json(&r));
                }
            }
            doc.set("fan", io::fan_to_json(fan));
        }
    }
    Ok(Output::Doc(doc))
}

fn wall_algebra(af: &ArrangementFan, base: usize) -> Result<arrangement::WallAlgebraReport> {
    let fp = af.flat_partition()?;
    let cat = Category::new(&af.fan, &fp)?;
    let poset = af.poset_of_regions(base)?;
    let g = picture::picture_group(&cat, &poset, Mode::Codim2, DEFAULT_CHAIN_LIMIT)?;
    arrangement::wa_certify(&af.fan, &fp, &g)
}

fn wa_json(r: &arrangement::WallAlgebraReport) -> Value {
    json!({
        "passes": r.passes(),
        "associative": r.associative,
        "commutative": r.commutative,
        "generators_distinct": r.generators_distinct,
        "failed_relator": r.failed_relator,
    })
}

fn group(cmd: &GroupCmd, mut doc: Doc, format: Format) -> Result<Output> {
    if let GroupCmd::Abelianize = cmd {
        let p = io::presentation_from_json(doc.get("presentation").ok_or_else(|| Error::PreconditionUnmet("no presentation in input".into()))?)?;
        doc.set("result", io::abelianization_json(&p.abelianization()));
        return Ok(Output::Doc(doc));
    }
    let fan = doc.fan()?;
    let partition = doc.partition(&fan)?;
    if let GroupCmd::CertifyBrauer { base } = cmd {
        let af = doc.require_arrangement()?;
        let b = base_chamber(&af, doc.get("base"), base.as_deref())?;
        let wa = wall_algebra(&af, b)?;
        let cat = Category::new(&fan, &partition)?;
        let poset = af.poset_of_regions(b)?;
        let cert = picture::hom_distinctness_certificate(&cat, &poset, wa.passes())?;
        doc.set(
            "result",
            json!({ "wall_algebra": wa_json(&wa), "faithful": cert.holds, "witness": cert.witness }),
        );
        return Ok(Output::Doc(doc));
    }
    let poset = doc.poset(&fan)?;
    let cat = Category::new(&fan, &partition)?;
    match cmd {
        GroupCmd::Picture { mode: m, chain_limit, gap } => {
            let g = picture::picture_group(&cat, &poset, mode(*m), *chain_limit)?;
            if *gap && format != Format::Json {
                return Ok(Output::Raw(g.presentation.to_gap()));
            }
            doc.set("presentation", io::presentation_to_json(&g.presentation));
            doc.set("result", json!({ "type1": g.type1, "type2": g.type2, "text": g.presentation.to_text() }));
            if *gap {
                doc.set("gap", json!(g.presentation.to_gap()));
            }
        }
        GroupCmd::Alt => {
            let p = picture::alt_presentation(&cat, &poset)?;
            doc.set("presentation", io::presentation_to_json(&p));
            doc.set("result", json!({ "text": p.to_text() }));
        }
        GroupCmd::Psi => {
            let g = picture::picture_group(&cat, &poset, Mode::Full, DEFAULT_CHAIN_LIMIT)?;
            let names = &g.presentation.generators;
            let words: Vec<Value> = (0..cat.num_morphisms())
                .map(|f| Ok(json!({ "morphism": f, "word": picture::psi(&cat, &poset, f)?.render(names) })))
                .collect::<Result<_>>()?;
            let check = picture::functor_check(&cat, &poset);
            doc.set("result", json!({ "psi": words, "functor": check.passed, "failure": check.failure, "reason": check.reason }));
        }
        GroupCmd::Quotient { coarse, seed } => {
            let coarse = match (coarse, seed) {
                (Some(path), _) => {
                    let o = Doc::read(Some(path))?;
                    io::partition_from_json(&fan, o.get("partition").ok_or_else(|| Error::Parse("coarse.partition".into()))?)?
                }
                (None, Some(s)) => Partition::closure(&fan, &io::parse_seeds(&fan, s)?)?,
                (None, None) => Partition::coarsest(&fan),
            };
            let g = picture::picture_group(&cat, &poset, Mode::Full, DEFAULT_CHAIN_LIMIT)?;
            let qp = QuotientPresentation::new(&g, &partition).quotient(&coarse)?;
            let added: Vec<String> = qp.identifications().iter().map(|w| w.render(&qp.base.generators)).collect();
            let pres = qp.presentation();
            doc.set("presentation", io::presentation_to_json(&pres));
            doc.set("result", json!({ "added": added, "text": pres.to_text() }));
        }
        GroupCmd::CertifyRank2 => {
            let c = picture::rank2_faithfulness_certificate(&cat, &poset)?;
            doc.set("result", json!({ "faithful": c.holds, "witness": c.witness }));
        }
        GroupCmd::Abelianize | GroupCmd::CertifyBrauer { .. } => unreachable!(),
    }
    Ok(Output::Doc(doc))
}

fn text_of(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(_) | Value::Bool(_) | Value::Null => v.to_string(),
        Value::Object(m) if m.contains_key("text") => text_of(&m["text"]),
        _ => serde_json::to_string_pretty(v).unwrap_or_default(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout();
    match run(&cli) {
        Ok(Output::Raw(s)) => {
            let _ = write!(stdout, "{s}");
            ExitCode::SUCCESS
        }
        Ok(Output::Doc(doc)) => {
            let v = Value::Object(doc.0);
            let s = match cli.format {
                Format::Text => text_of(v.get("result").or_else(|| v.get("presentation")).unwrap_or(&v)),
                _ => serde_json::to_string_pretty(&v).unwrap_or_default(),
            };
            let _ = writeln!(stdout, "{s}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let _ = writeln!(stdout, "{}", e.to_json());
            ExitCode::FAILURE
        }
    }
}
