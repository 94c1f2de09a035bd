//! `paramod`: command-line front end for `paramod-core`.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Map, Value};

use paramod_core::group::{member, parse_matrix, random_element, MatrixDoc};
use paramod_core::gspaces::{make_lattice, reduce_to_standard, IsotropicLattice};
use paramod_core::invariants::divisors;
use paramod_core::ints::{Int, Ints};
use paramod_core::oracle::{cross_validate_lines, orbit_sample, DEFAULT_SCAN_CAP};
use paramod_core::orbits_lines::{canon, canon_line, enumerate_lev, enumerate_pol, equiv_lev, transporter, LevCanonical, Transport};
use paramod_core::{Error, GroupKind, Polarization, RatMatrix, Result, SympVector, Verdict};

const SCHEMA: &str = "paramod-tits/1";

#[derive(Parser)]
#[command(name = "paramod", version, about = "Orbits of isotropic lines and g-spaces under paramodular groups")]
struct Cli {
    /// Emit one JSON document (the default).
    #[arg(long, global = true, conflicts_with = "plain")]
    json: bool,
    /// Emit human-readable text.
    #[arg(long, global = true)]
    plain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PolArg {
    /// Polarization type, e.g. 1,2,6.
    #[arg(long)]
    pol: String,
}

#[derive(Args)]
struct GroupArg {
    /// tilde-pol (pol), tilde-pol-lev (lev), conj-pol or conj-pol-lev.
    #[arg(long, default_value = "tilde-pol")]
    group: String,
}

#[derive(Subcommand)]
enum Command {
    /// Divisor tuple D_1, ..., D_{g-1} of a primitive vector.
    Divisors {
        #[command(flatten)]
        pol: PolArg,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// Canonical orbit representative with a witness matrix.
    Canon {
        #[command(flatten)]
        pol: PolArg,
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        /// Treat v and -v as the same line.
        #[arg(long)]
        line: bool,
    },
    /// Decide whether two vectors lie in one orbit; prints M with v M = w.
    Equiv {
        #[command(flatten)]
        pol: PolArg,
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Orbit representatives of primitive vectors.
    Reps {
        #[command(flatten)]
        pol: PolArg,
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        count_only: bool,
    },
    /// Move a maximal isotropic lattice to the standard one.
    ReduceGspace {
        #[command(flatten)]
        pol: PolArg,
        /// Rows of a spanning set, "a,b,..;c,d,.." or @file.
        #[arg(long, allow_hyphen_values = true)]
        basis: String,
        /// Include every recorded step.
        #[arg(long)]
        tape: bool,
    },
    /// Membership of a matrix in a group.
    Member {
        #[command(flatten)]
        pol: PolArg,
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// A random group element.
    Sample {
        #[command(flatten)]
        pol: PolArg,
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, env = "PARAMOD_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        length: usize,
    },
    /// Brute-force checks.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Check a claimed witness: membership plus v M = w or U B M = [1 | 0].
    Verify {
        #[command(flatten)]
        pol: PolArg,
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, allow_hyphen_values = true, requires = "expect")]
        vector: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "vector")]
        expect: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "unimodular", conflicts_with = "vector")]
        basis: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "basis")]
        unimodular: Option<String>,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Classify every primitive vector in [0, bound)^{2g} and compare with `reps`.
    CrossValidate {
        #[command(flatten)]
        pol: PolArg,
        #[command(flatten)]
        group: GroupArg,
        /// Defaults to dsum(1, g-1).
        #[arg(long)]
        bound: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SCAN_CAP)]
        cap: u64,
    },
    /// Random walks from a vector; reports any change of canonical form.
    Walk {
        #[command(flatten)]
        pol: PolArg,
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long, env = "PARAMOD_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        walks: usize,
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
}

struct Output {
    json: Value,
    plain: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            if cli.plain {
                print!("{}", out.plain);
            } else {
                println!("{}", serde_json::to_string(&with_schema(out.json)).expect("serializable"));
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.plain {
                eprintln!("error: {e}");
            } else {
                let doc = json!({"schema": SCHEMA, "error": {"kind": e.code(), "message": e.to_string()}});
                println!("{doc}");
            }
            ExitCode::from(1)
        }
    }
}

fn with_schema(v: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), SCHEMA.into());
    if let Value::Object(o) = v {
        m.extend(o);
    }
    Value::Object(m)
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn read_arg(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))
        }
        None => Ok(s.to_string()),
    }
}

fn parse_pol(a: &PolArg) -> Result<Polarization> {
    read_arg(&a.pol)?.parse()
}

fn parse_group(a: &GroupArg) -> Result<GroupKind> {
    a.group.parse()
}

fn parse_vector(s: &str) -> Result<SympVector> {
    read_arg(s)?.parse()
}

/// `"a,b;c,d"`, rows may also be split by newlines, or a JSON matrix
/// (`{"rows":..,"entries":..}` or a nested array).
fn parse_matrix_arg(s: &str) -> Result<RatMatrix> {
    let text = read_arg(s)?;
    let t = text.trim();
    let bad = |e: serde_json::Error| Error::InvalidInput(format!("cannot parse matrix JSON: {e}"));
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(bad)?;
        // accept a whole command output carrying a matrix field
        let doc = ["entries", "witness", "matrix", "gamma"]
            .iter()
            .find_map(|k| v.get(k).map(|x| if *k == "entries" { v.clone() } else { x.clone() }))
            .ok_or_else(|| Error::InvalidInput("JSON has no matrix".into()))?;
        return serde_json::from_value::<MatrixDoc>(doc).map_err(bad)?.to_rat();
    }
    if t.starts_with('[') {
        let entries: Vec<Vec<paramod_core::group::Entry>> = serde_json::from_str(t).map_err(bad)?;
        return MatrixDoc { rows: entries.len(), entries }.to_rat();
    }
    parse_matrix(&t.replace('\n', ";"))
}

fn matrix_json(m: &RatMatrix) -> Value {
    to_json(&MatrixDoc::from_rat(m))
}

fn matrix_plain(m: &RatMatrix) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect();
    let w = cells.iter().flatten().map(|c| c.len()).max().unwrap_or(1);
    cells.iter().map(|r| r.iter().map(|c| format!("{c:>w$}")).collect::<Vec<_>>().join(" ") + "\n").collect()
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Member => json!({"member": true}),
        Verdict::NotMember(x) => json!({"member": false, "violation": to_json(x)}),
    }
}

fn run(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Divisors { pol, vector } => {
            let p = parse_pol(pol)?;
            let v = parse_vector(vector)?;
            let t = divisors(&v, &p)?;
            let plain = format!(
                "D = ({})\nproduct = {}\n",
                t.values().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
                t.product()
            );
            Ok(Output { json: to_json(&t), plain })
        }
        Command::Canon { pol, group, vector, line } => {
            let p = parse_pol(pol)?;
            let kind = parse_group(group)?;
            let v = parse_vector(vector)?;
            let (canonical, witness, sign) = if *line {
                let r = canon_line(&v, kind, &p)?;
                (r.canonical, r.witness, Some(r.sign))
            } else {
                let r = canon(&v, kind, &p)?;
                r.verify()?;
                (r.canonical, r.witness, None)
            };
            let mut out = json!({
                "group": kind.name(),
                "input": to_json(&v),
                "canonical": to_json(&canonical),
            });
            if let Some(s) = sign {
                out["sign"] = s.into();
            }
            if kind.is_level() {
                out["level"] = to_json(&LevCanonical::from_vector(&canonical, &p)?);
            }
            out["witness"] = matrix_json(&witness.matrix());
            let plain = format!("canonical {canonical}\nwitness\n{}", matrix_plain(&witness.matrix()));
            Ok(Output { json: out, plain })
        }
        Command::Equiv { pol, group, vector, to } => {
            let p = parse_pol(pol)?;
            let kind = parse_group(group)?;
            let (v, w) = (parse_vector(vector)?, parse_vector(to)?);
            let t = if kind.is_level() && !kind.is_conjugated() { equiv_lev(&v, &w, &p)? } else { transporter(&v, &w, &p, kind)? };
            Ok(match t {
                Transport::Equivalent(m) => Output {
                    json: json!({"equivalent": true, "witness": matrix_json(&m.matrix())}),
                    plain: format!("equivalent\n{}", matrix_plain(&m.matrix())),
                },
                Transport::NotEquivalent { v_canonical, w_canonical } => Output {
                    json: json!({"equivalent": false, "canonical": [to_json(&v_canonical), to_json(&w_canonical)]}),
                    plain: format!("not equivalent: {v_canonical} vs {w_canonical}\n"),
                },
            })
        }
        Command::Reps { pol, group, count_only } => {
            let p = parse_pol(pol)?;
            let kind = parse_group(group)?;
            if kind.is_conjugated() {
                return Err(Error::InvalidInput("representatives are listed for tilde-pol and tilde-pol-lev".into()));
            }
            let reps: Vec<(SympVector, BigInt, Option<LevCanonical>)> = if kind.is_level() {
                enumerate_lev(&p)
                    .into_iter()
                    .map(|c| Ok((c.to_vector(&p)?, c.product.clone(), Some(c))))
                    .collect::<Result<_>>()?
            } else {
                enumerate_pol(&p)
                    .into_iter()
                    .map(|c| Ok((c.vhat.clone(), divisors(&c.vhat, &p)?.product().clone(), None)))
                    .collect::<Result<_>>()?
            };
            if *count_only {
                return Ok(Output { json: json!({"count": reps.len()}), plain: format!("{}\n", reps.len()) });
            }
            let list: Vec<Value> = reps
                .iter()
                .map(|(v, prod, lev)| {
                    let mut o = json!({"vector": to_json(v), "product": to_json(&Int(prod.clone()))});
                    if let Some(l) = lev {
                        o["residues"] = to_json(&Ints::from(l.residues.clone()));
                    }
                    o
                })
                .collect();
            let plain = reps.iter().map(|(v, _, _)| format!("{v}\n")).collect();
            Ok(Output { json: json!({"group": kind.name(), "count": reps.len(), "representatives": list}), plain })
        }
        Command::ReduceGspace { pol, basis, tape } => {
            let p = parse_pol(pol)?;
            let l = make_lattice(&parse_matrix_arg(basis)?, &p)?;
            let r = reduce_to_standard(&l)?;
            r.verify(&l)?;
            let pre = r.pre_basis(&l)?;
            let mut out = json!({
                "basis": to_json(l.basis()),
                "unimodular": to_json(&r.unimodular),
                "gamma": to_json(r.gamma.tilde()),
                "pre_basis": to_json(&pre),
                "steps": r.tape.steps.len(),
            });
            if *tape {
                out["tape"] = to_json(&r.tape.steps);
            }
            let plain = format!(
                "unimodular\n{}gamma\n{}",
                matrix_plain(&RatMatrix::from(&r.unimodular)),
                matrix_plain(&RatMatrix::from(r.gamma.tilde()))
            );
            Ok(Output { json: out, plain })
        }
        Command::Member { pol, group, matrix } => {
            let p = parse_pol(pol)?;
            let kind = parse_group(group)?;
            let v = member(&parse_matrix_arg(matrix)?, kind, &p)?;
            let plain = match &v {
                Verdict::Member => "member\n".to_string(),
                Verdict::NotMember(x) => format!("not a member: {x}\n"),
            };
            Ok(Output { json: verdict_json(&v), plain })
        }
        Command::Sample { pol, group, seed, length } => {
            let p = parse_pol(pol)?;
            let kind = parse_group(group)?;
            let m = random_element(kind, &p, *seed, *length);
            let verdict = m.verify()?;
            let mut out = json!({"group": kind.name(), "seed": seed, "length": length, "matrix": matrix_json(&m.matrix())});
            out["member"] = verdict.is_member().into();
            Ok(Output { json: out, plain: matrix_plain(&m.matrix()) })
        }
        Command::Oracle { command } => run_oracle(command),
        Command::Verify { pol, group, matrix, vector, expect, basis, unimodular } => {
            let p = parse_pol(pol)?;
            let kind = parse_group(group)?;
            let m = parse_matrix_arg(matrix)?;
            let verdict = member(&m, kind, &p)?;
            let product = match (vector, expect, basis, unimodular) {
                (Some(v), Some(w), _, _) => {
                    let (v, w) = (parse_vector(v)?, parse_vector(w)?);
                    let image = RatMatrix::from(&row_matrix(&v)).checked_mul(&m)?;
                    Some(image == RatMatrix::from(&row_matrix(&w)))
                }
                (_, _, Some(b), Some(u)) => {
                    let (b, u) = (parse_matrix_arg(b)?, parse_matrix_arg(u)?);
                    let out = u.checked_mul(&b)?.checked_mul(&m)?;
                    Some(out == RatMatrix::from(IsotropicLattice::standard(&p).basis()))
                }
                _ => None,
            };
            let ok = verdict.is_member() && product.unwrap_or(true);
            let mut out = verdict_json(&verdict);
            if let Some(x) = product {
                out["product"] = x.into();
            }
            out["ok"] = ok.into();
            Ok(Output { json: out, plain: format!("{}\n", if ok { "ok" } else { "failed" }) })
        }
    }
}

fn row_matrix(v: &SympVector) -> paramod_core::IntMatrix {
    paramod_core::IntMatrix::from_rows(vec![v.entries().to_vec()]).expect("one row")
}

fn run_oracle(cmd: &OracleCommand) -> Result<Output> {
    match cmd {
        OracleCommand::CrossValidate { pol, group, bound, cap } => {
            let p = parse_pol(pol)?;
            let kind = parse_group(group)?;
            let bound: BigInt = match bound {
                Some(b) => b.parse().map_err(|_| Error::InvalidInput(format!("cannot parse bound {b:?}")))?,
                None => p.dsum(1, p.genus() - 1)?,
            };
            let r = cross_validate_lines(&p, kind, &bound, *cap)?;
            let mut plain = format!(
                "scanned {} ({} primitive){}; {} classes, {} enumerated; agree: {}\n",
                r.scanned,
                r.primitive,
                if r.incomplete { ", incomplete" } else { "" },
                r.classes.len(),
                r.enumerated.len(),
                r.agree
            );
            for c in &r.classes {
                plain += &format!("{}  product {}  members {}\n", c.canonical, c.product, c.members);
            }
            Ok(Output { json: to_json(&r), plain })
        }
        OracleCommand::Walk { pol, group, vector, seed, walks, steps } => {
            let p = parse_pol(pol)?;
            let kind = parse_group(group)?;
            let v = parse_vector(vector)?;
            let s = orbit_sample(&v, kind, &p, *seed, *walks, *steps)?;
            s.replay()?;
            let escapes = s.escapes()?;
            let out = json!({
                "group": kind.name(),
                "start": to_json(&v),
                "seed": seed,
                "walks": walks,
                "steps": steps,
                "visited": s.visited.len(),
                "escapes": to_json(&escapes),
            });
            let plain = format!("visited {} vectors, {} escapes\n", s.visited.len(), escapes.len());
            Ok(Output { json: out, plain })
        }
    }
}
