//! Command-line front end. Every subcommand builds one JSON object; the
//! table format is a plain rendering of that same object.

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::bwb::{self, BwbResult};
use crate::error::{Error, Result};
use crate::opcalc::{self, DEFAULT_NULLSTELLENSATZ_CAP};
use crate::rootsystem::{RootSystem, SimpleType, Weight};
use crate::svariety::{describe_quotient, GammaMonoid, SaturationStatus, DEFAULT_HILBERT_CAP};
use crate::weyl::{self, WeylElement, DEFAULT_WEYL_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "flagcoh",
    version,
    about = "Exact computations for flag varieties, Weyl groups and the basic affine space G/U",
    after_help = "Weights are comma-separated fundamental-weight coordinates, e.g. 1,-2.\n\
                  Pass negative weights after `--`, e.g. `flagcoh bwb A1 -- -2`."
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology of the line bundle L_λ on G/B.
    Bwb {
        /// Cartan type, e.g. A2 or A1xB2.
        ty: String,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
    },
    /// Weyl group classes contributing to H^i(G/U, O).
    Xcoh {
        ty: String,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_WEYL_CAP)]
        weyl_cap: u64,
    },
    /// Lattice data and the saturation test for Γ = Σ N γⱼ.
    Svariety {
        ty: String,
        /// Generators separated by `;`, e.g. "1,1;2,0".
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
        #[arg(long, default_value_t = DEFAULT_HILBERT_CAP)]
        hilbert_cap: u64,
    },
    /// The polynomial P_η, optionally twisted by F_w and pushed through ψ_Γ.
    Peta {
        ty: String,
        eta: String,
        /// `w0` or a 1-based reduced word such as `1,2,1`.
        #[arg(long)]
        twist: Option<String>,
        /// Generators of Γ for ψ_Γ, separated by `;`.
        #[arg(long)]
        psi: Option<String>,
    },
    /// k(α̃), the Coxeter number and the surjectivity verdict.
    Minorbit {
        ty: Option<String>,
        /// Print the whole table.
        #[arg(long)]
        table: bool,
    },
    /// k(λ) = ⟨λ, 2ρ∨⟩.
    Kvalue {
        ty: String,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
    },
    /// Order, degrees, Poincaré polynomial; optionally every element.
    Weyl {
        ty: String,
        /// List every element with a reduced word.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = DEFAULT_WEYL_CAP)]
        weyl_cap: u64,
    },
    /// Checks that the twists F_w(P_η), w ∈ W, have no common zero.
    Nullstellensatz {
        ty: String,
        eta: String,
        #[arg(long, default_value_t = DEFAULT_NULLSTELLENSATZ_CAP)]
        cap: u64,
        #[arg(long, default_value_t = DEFAULT_WEYL_CAP)]
        weyl_cap: u64,
    },
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok((code, value)) => Outcome {
            code,
            stdout: render(&value, cli.format),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(v).expect("JSON values serialize")
        ),
        Format::Table => {
            let mut out = String::new();
            render_table(v, &mut out);
            out
        }
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_record_list(v: &Value) -> bool {
    matches!(v, Value::Array(a) if !a.is_empty() && a.iter().all(Value::is_object))
}

fn render_rows(rows: &[Value], indent: &str, out: &mut String) {
    let keys: Vec<String> = rows[0].as_object().unwrap().keys().cloned().collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| keys.iter().map(|k| scalar_text(&r[k])).collect())
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| {
            cells
                .iter()
                .map(|c| c[i].chars().count())
                .chain([k.len()])
                .max()
                .unwrap()
        })
        .collect();
    let line = |items: Vec<&str>| {
        let padded: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        format!("{indent}{}\n", padded.join("  ").trim_end())
    };
    out.push_str(&line(keys.iter().map(String::as_str).collect()));
    for c in &cells {
        out.push_str(&line(c.iter().map(String::as_str).collect()));
    }
}

fn render_table(v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, val) in m {
                if is_record_list(val) {
                    out.push_str(&format!("{k}:\n"));
                    render_rows(val.as_array().unwrap(), "  ", out);
                } else if let Value::Object(inner) = val {
                    out.push_str(&format!("{k}:\n"));
                    for (ik, iv) in inner {
                        out.push_str(&format!("  {ik}: {}\n", scalar_text(iv)));
                    }
                } else {
                    out.push_str(&format!("{k}: {}\n", scalar_text(val)));
                }
            }
        }
        Value::Array(rows) if is_record_list(v) => render_rows(rows, "", out),
        other => {
            out.push_str(&scalar_text(other));
            out.push('\n');
        }
    }
}

fn big_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => json!(x),
        None => json!(n.to_string()),
    }
}

fn parse_weight(rs: &RootSystem, s: &str) -> Result<Weight> {
    let w: Weight = s.parse()?;
    if w.rank() != rs.rank() {
        return Err(Error::Parse(format!(
            "weight '{s}' has {} coordinates, type {rs} needs {}",
            w.rank(),
            rs.rank()
        )));
    }
    Ok(w)
}

fn parse_gens(rs: &RootSystem, s: &str) -> Result<Vec<Weight>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| parse_weight(rs, p))
        .collect()
}

fn parse_twist(rs: &RootSystem, s: &str) -> Result<WeylElement> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("w0") {
        return Ok(weyl::longest_element(rs));
    }
    if s == "e" || s.is_empty() {
        return Ok(WeylElement::identity(rs.rank()));
    }
    let word: Vec<usize> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .ok()
                .filter(|&i| i >= 1)
                .map(|i| i - 1)
                .ok_or_else(|| Error::Parse(format!("bad Weyl word letter '{}'", t.trim())))
        })
        .collect::<Result<_>>()?;
    WeylElement::from_word(rs, &word)
}

fn execute(cmd: &Command) -> Result<(i32, Value)> {
    match cmd {
        Command::Bwb { ty, lambda } => {
            let rs = RootSystem::parse(ty)?;
            let lambda = parse_weight(&rs, lambda)?;
            let v = match bwb::line_bundle_cohomology(&rs, &lambda)? {
                BwbResult::Vanishes => json!({ "vanishes": true }),
                BwbResult::NonZero {
                    degree,
                    mu,
                    witness,
                } => json!({
                    "vanishes": false,
                    "degree": degree,
                    "mu": mu,
                    "dim": big_json(&rs.weyl_dimension(&mu)?),
                    "word": witness.word_one_based(),
                }),
            };
            Ok((0, v))
        }
        Command::Xcoh {
            ty,
            degree,
            weyl_cap,
        } => {
            let rs = RootSystem::parse(ty)?;
            let histogram = weyl::poincare_coefficients(&rs);
            let v = match degree {
                None => json!({ "order": rs.weyl_order(), "histogram": histogram }),
                Some(i) => {
                    let rep = bwb::x_cohomology(&rs, *i, *weyl_cap)?;
                    let classes: Vec<Value> = rep
                        .classes
                        .iter()
                        .map(|c| json!({ "word": c.w.word_one_based(), "e_weight": c.e_weight }))
                        .collect();
                    json!({
                        "degree": rep.degree,
                        "multiplicity": rep.multiplicity,
                        "classes": classes,
                        "histogram": histogram,
                    })
                }
            };
            Ok((0, v))
        }
        Command::Svariety {
            ty,
            gens,
            hilbert_cap,
        } => {
            let rs = RootSystem::parse(ty)?;
            let gens = parse_gens(&rs, gens)?;
            let m = GammaMonoid::new(&rs, &gens)?;
            let verdict = m.check_saturation(&rs, *hilbert_cap)?;
            let q = m.q_gamma();
            let (status, code) = match verdict.status {
                SaturationStatus::Holds => ("holds", 0),
                SaturationStatus::Fails => ("fails", 0),
                SaturationStatus::Inconclusive => ("inconclusive", 4),
            };
            let holds = match verdict.status {
                SaturationStatus::Inconclusive => Value::Null,
                s => json!(s == SaturationStatus::Holds),
            };
            let v = json!({
                "holds": holds,
                "status": status,
                "witness": verdict.witness,
                "hilbert_basis": verdict.hilbert_basis,
                "points_examined": verdict.points_examined,
                "rank": m.rank(),
                "lattice_basis": m.lattice_basis(),
                "quotient": describe_quotient(&q),
                "torus_rank": q.torus_rank,
                "finite_factors": q.finite_factors.iter().map(big_json).collect::<Vec<_>>(),
            });
            Ok((code, v))
        }
        Command::Peta {
            ty,
            eta,
            twist,
            psi,
        } => {
            let rs = RootSystem::parse(ty)?;
            let eta = parse_weight(&rs, eta)?;
            let mut p = opcalc::p_eta(&rs, &eta)?;
            if let Some(t) = twist {
                p = opcalc::fw_on_poly(&rs, &parse_twist(&rs, t)?, &p)?;
            }
            if let Some(g) = psi {
                let m = GammaMonoid::new(&rs, &parse_gens(&rs, g)?)?;
                p = opcalc::psi_gamma(&rs, &p, &m)?;
            }
            Ok((
                0,
                json!({
                    "polynomial": p.to_string(),
                    "degree": p.degree(),
                    "k": opcalc::k_value(&rs, &eta)?,
                }),
            ))
        }
        Command::Minorbit { ty, table } => {
            if *table {
                let rows: Vec<Value> = opcalc::min_orbit_table()?
                    .into_iter()
                    .map(|r| {
                        let fam: SimpleType = r.simple_type.parse().expect("table types parse");
                        let mut v = serde_json::to_value(r).expect("report serializes");
                        v["formula"] = json!(opcalc::family_formula(fam));
                        v
                    })
                    .collect();
                return Ok((0, Value::Array(rows)));
            }
            let ty = ty
                .as_deref()
                .ok_or_else(|| Error::Parse("minorbit needs a simple type or --table".into()))?;
            let types = crate::rootsystem::parse_type_spec(ty)?;
            if types.len() != 1 {
                return Err(Error::Domain(format!("{ty} is not simple")));
            }
            let r = opcalc::min_orbit_report(types[0])?;
            let mut v = serde_json::to_value(r).expect("report serializes");
            v["formula"] = json!(opcalc::family_formula(types[0]));
            Ok((0, v))
        }
        Command::Kvalue { ty, lambda } => {
            let rs = RootSystem::parse(ty)?;
            let lambda = parse_weight(&rs, lambda)?;
            Ok((0, json!({ "k": opcalc::k_value(&rs, &lambda)? })))
        }
        Command::Weyl { ty, list, weyl_cap } => {
            let rs = RootSystem::parse(ty)?;
            let w0 = weyl::longest_element(&rs);
            let mut obj = Map::new();
            obj.insert("order".into(), json!(rs.weyl_order()));
            obj.insert("degrees".into(), json!(rs.degrees()));
            obj.insert("exponents".into(), json!(rs.exponents()));
            obj.insert("poincare".into(), json!(weyl::poincare_coefficients(&rs)));
            obj.insert("longest_word".into(), json!(w0.word_one_based()));
            if *list {
                let elems: Vec<Value> = weyl::enumerate(&rs, *weyl_cap)?
                    .iter()
                    .map(|w| json!({ "length": w.word().len(), "word": w.word_one_based() }))
                    .collect();
                obj.insert("elements".into(), Value::Array(elems));
            }
            Ok((0, Value::Object(obj)))
        }
        Command::Nullstellensatz {
            ty,
            eta,
            cap,
            weyl_cap,
        } => {
            let rs = RootSystem::parse(ty)?;
            let eta = parse_weight(&rs, eta)?;
            let ok = opcalc::nullstellensatz_check(&rs, &eta, *cap, *weyl_cap)?;
            Ok((
                0,
                json!({
                    "no_common_zero": ok,
                    "factors_per_element": opcalc::p_eta_factors(&rs, &eta)?.len(),
                    "elements": rs.weyl_order(),
                }),
            ))
        }
    }
}
