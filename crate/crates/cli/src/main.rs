//! `g2grade`: build, verify, induce and classify gradings from the shell.
//!
//! Exit codes: 0 success, 1 verification or consistency failure, 2 input
//! error. JSON goes to stdout (or `-o FILE`), messages to stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use g2grade::abelian::AbelianGroup;
use g2grade::classify::{classify_c_grading, iso_check, ClassifyError};
use g2grade::derivations::{derivation_space, span_check};
use g2grade::grading::{
    canonical_c_grading, induce_on_l, verify_grading, Ambient, CharacterAction, Grading, GradingDescriptor,
    GradingError, GradingType,
};
use g2grade::io::{
    characters_json, classification_json, matrix_json, parse_element, parse_group, verdict_json,
    verification_json, GradingFile, IoError,
};
use g2grade::octonion::{self, Basis, Octonion};
use g2grade::scalar::{ratio, Field, Rational};

#[derive(Parser)]
#[command(
    name = "g2grade",
    version,
    about = "Exact gradings of the split octonions and of G2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the multiplication table, Der(C) and the norm.
    Selfcheck {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the multiplication table of the standard basis.
    Table {
        /// Emit JSON instead of a text grid.
        #[arg(long)]
        json: bool,
    },
    /// List the characters of a group, optionally with their action on a grading.
    Chars {
        /// Cyclic factors, e.g. `2,2`; empty for the trivial group.
        #[arg(long, allow_hyphen_values = true)]
        group: String,
        #[arg(long)]
        grading: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Work with grading files.
    Grading {
        #[command(subcommand)]
        command: GradingCommand,
    },
}

#[derive(Subcommand)]
enum GradingCommand {
    /// Build the canonical grading of a type.
    New {
        #[arg(long = "type")]
        kind: u8,
        #[arg(long)]
        group: String,
        /// `name=[r1,...]`, repeated for each parameter.
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the grading axioms.
    Verify {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Induce the grading of Der(C) from a grading of C.
    Induce {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recognize the type of a grading of C.
    Classify {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare two gradings.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Check(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<GradingError> for Failure {
    fn from(e: GradingError) -> Self {
        match e {
            GradingError::Descriptor(_)
            | GradingError::Group(_)
            | GradingError::Scalar(_)
            | GradingError::WrongAmbientDim { .. }
            | GradingError::DuplicateLabel(_)
            | GradingError::AmbientMismatch { .. }
            | GradingError::TupleSum(_)
            | GradingError::InvalidAction(_) => Failure::Input(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::NotAGrading(_) => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Selfcheck { output } => selfcheck(output.as_deref()),
        Command::Table { json } => table(json),
        Command::Chars {
            group,
            grading,
            output,
        } => chars(&group, grading.as_deref(), output.as_deref()),
        Command::Grading { command } => match command {
            GradingCommand::New {
                kind,
                group,
                params,
                output,
            } => grading_new(kind, &group, &params, output.as_deref()),
            GradingCommand::Verify { file, output } => grading_verify(&file, output.as_deref()),
            GradingCommand::Induce { file, output } => grading_induce(&file, output.as_deref()),
            GradingCommand::Classify { file, output } => grading_classify(&file, output.as_deref()),
            GradingCommand::Iso {
                first,
                second,
                output,
            } => grading_iso(&first, &second, output.as_deref()),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(m)) => {
            eprintln!("g2grade: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("g2grade: {m}");
            ExitCode::from(2)
        }
    }
}

fn emit(value: &Value, output: Option<&Path>) -> Outcome {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_grading(path: &Path) -> Result<(Grading, Option<GradingDescriptor>), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let file = GradingFile::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(file.to_grading()?)
}

fn require_verified(g: &Grading, path: &Path) -> Outcome {
    let report = verify_grading(g);
    match report.violation {
        None => Ok(()),
        Some(v) => Err(Failure::Check(format!(
            "{} is not a grading: {v}",
            path.display()
        ))),
    }
}

fn selfcheck(output: Option<&Path>) -> Outcome {
    let mut checks = Vec::new();
    let mut push = |name: &str, result: Result<String, String>| {
        let passed = result.is_ok();
        let detail = result.unwrap_or_else(|e| e);
        eprintln!("{} {name}: {detail}", if passed { "ok  " } else { "FAIL" });
        checks.push(json!({"name": name, "passed": passed, "detail": detail}));
    };

    push(
        "table",
        octonion::check_table()
            .map(|r| {
                format!(
                    "{}/64 table entries verified; {}/16 identity products; alternativity on {} basis pairs",
                    r.entries_verified, r.identity_products, r.alternativity_pairs
                )
            })
            .map_err(|e| e.to_string()),
    );

    let der = derivation_space();
    let closed = (0..der.dim())
        .all(|i| (0..der.dim()).all(|j| der.contains(der.basis()[i].bracket(&der.basis()[j]).matrix())));
    push(
        "derivations",
        if der.dim() == 14 && closed {
            Ok(format!("dim Der(C) = {}; closed under the bracket", der.dim()))
        } else {
            Err(format!("dim Der(C) = {}; bracket closed: {closed}", der.dim()))
        },
    );

    push(
        "span",
        span_check()
            .map(|r| {
                format!(
                    "D_(e1,u) rank {}, D_(e2,v) rank {}, d_T rank {}, combined rank {}",
                    r.e1_u_rank, r.e2_v_rank, r.sl3_rank, r.combined_rank
                )
            })
            .map_err(|e| e.to_string()),
    );

    let det = der.killing_form().determinant();
    push(
        "killing_form",
        if Field::is_zero(&det) {
            Err("Killing form is degenerate".into())
        } else {
            Ok(format!("Killing form determinant = {det}"))
        },
    );

    push("composition", composition_check(200));

    let passed = checks.iter().all(|c| c["passed"] == json!(true));
    emit(&json!({"passed": passed, "checks": checks}), output)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Check("self-check failed".into()))
    }
}

fn composition_check(random_pairs: usize) -> Result<String, String> {
    let check = |x: &Octonion<Rational>, y: &Octonion<Rational>| -> Result<bool, String> {
        let n = |z: &Octonion<Rational>| z.norm().map_err(|e| e.to_string());
        Ok(n(&x.mul(y))? == n(x)? * n(y)?)
    };
    for a in Basis::ALL {
        for b in Basis::ALL {
            let (x, y) = (Octonion::basis(a), Octonion::basis(b));
            if !check(&x, &y)? {
                return Err(format!("norm({a}·{b}) ≠ norm({a})·norm({b})"));
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x6732);
    let mut random = || {
        let coords: Vec<Rational> = (0..8)
            .map(|_| ratio(rng.gen_range(-6..=6), rng.gen_range(1..=5)))
            .collect();
        Octonion::from_slice(&coords)
    };
    for _ in 0..random_pairs {
        let (x, y) = (random(), random());
        if !check(&x, &y)? {
            return Err(format!("norm(xy) ≠ norm(x)norm(y) for x = {x}, y = {y}"));
        }
    }
    Ok(format!(
        "norm(xy) = norm(x)norm(y) on 64 basis pairs and {random_pairs} random pairs"
    ))
}

fn table(as_json: bool) -> Outcome {
    if as_json {
        let rows: Vec<Vec<Value>> = Basis::ALL
            .iter()
            .map(|&a| {
                Basis::ALL
                    .iter()
                    .map(|&b| {
                        g2grade::io::octonion_json(&Octonion::<Rational>::basis(a).mul(&Octonion::basis(b)))
                    })
                    .collect()
            })
            .collect();
        let names: Vec<&str> = Basis::ALL.iter().map(|b| b.name()).collect();
        emit(&json!({"basis": names, "products": rows}), None)
    } else {
        print!("{}", octonion::render_table());
        Ok(())
    }
}

fn chars(group: &str, grading: Option<&Path>, output: Option<&Path>) -> Outcome {
    let group = parse_group(group)?;
    let mut listing = characters_json(&group)?;
    if let Some(path) = grading {
        let (g, _) = read_grading(path)?;
        if g.group() != &group {
            return Err(Failure::Input(format!(
                "{} is graded by {}, not by {group}",
                path.display(),
                g.group()
            )));
        }
        require_verified(&g, path)?;
        let action = CharacterAction::of_grading(&g)?;
        for (entry, (_, m)) in listing
            .as_array_mut()
            .expect("array")
            .iter_mut()
            .zip(action.matrices())
        {
            entry["matrix"] = matrix_json(m);
        }
    }
    emit(
        &json!({"group": {"factors": group.factors()}, "characters": listing}),
        output,
    )
}

fn parse_param(
    group: &AbelianGroup,
    text: &str,
) -> Result<(String, g2grade::abelian::GroupElement), Failure> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| Failure::Input(format!("parameter {text:?} is not of the form name=[r,...]")))?;
    let residues = parse_element(value)?;
    let element = group
        .element(&residues)
        .map_err(|e| Failure::Input(format!("parameter {name}: {e}")))?;
    Ok((name.trim().to_string(), element))
}

fn grading_new(kind: u8, group: &str, params: &[String], output: Option<&Path>) -> Outcome {
    let kind = GradingType::from_number(kind)
        .ok_or_else(|| Failure::Input(format!("unknown type {kind}, expected 1 to 9")))?;
    let group = parse_group(group)?;
    let mut descriptor = GradingDescriptor::new(kind, []);
    for p in params {
        let (name, element) = parse_param(&group, p)?;
        if descriptor.params.insert(name.clone(), element).is_some() {
            return Err(Failure::Input(format!("parameter {name} given twice")));
        }
    }
    let g = canonical_c_grading(&descriptor, &group)?;
    let report = verify_grading(&g);
    if let Some(v) = report.violation {
        return Err(Failure::Check(format!(
            "canonical grading fails verification: {v}"
        )));
    }
    eprintln!("built {descriptor} over {group}");
    let file = GradingFile::from_grading(&g, Some(&descriptor));
    emit(&serde_json::to_value(&file).expect("serializable"), output)
}

fn grading_verify(path: &Path, output: Option<&Path>) -> Outcome {
    let (g, _) = read_grading(path)?;
    let report = verify_grading(&g);
    emit(&verification_json(&report), output)?;
    match report.violation {
        None => Ok(()),
        Some(v) => Err(Failure::Check(v.to_string())),
    }
}

fn grading_induce(path: &Path, output: Option<&Path>) -> Outcome {
    let (g, _) = read_grading(path)?;
    if g.ambient() != Ambient::Octonion {
        return Err(Failure::Input(format!(
            "{} is not a grading of the octonions",
            path.display()
        )));
    }
    require_verified(&g, path)?;
    let l = induce_on_l(&g)?;
    if let Some(v) = verify_grading(&l).violation {
        return Err(Failure::Check(format!("induced grading fails verification: {v}")));
    }
    let file = GradingFile::from_grading(&l, None);
    emit(&serde_json::to_value(&file).expect("serializable"), output)
}

fn grading_classify(path: &Path, output: Option<&Path>) -> Outcome {
    let (g, _) = read_grading(path)?;
    if g.ambient() != Ambient::Octonion {
        return Err(Failure::Input(format!(
            "{} is not a grading of the octonions",
            path.display()
        )));
    }
    require_verified(&g, path)?;
    let c = classify_c_grading(&g)?;
    emit(&classification_json(&c), output)
}

fn grading_iso(first: &Path, second: &Path, output: Option<&Path>) -> Outcome {
    let (a, _) = read_grading(first)?;
    let (b, _) = read_grading(second)?;
    if a.ambient() != b.ambient() {
        return Err(Failure::Input(format!(
            "cannot compare a grading of {} with a grading of {}",
            a.ambient(),
            b.ambient()
        )));
    }
    require_verified(&a, first)?;
    require_verified(&b, second)?;
    let verdict = iso_check(&a, &b)?;
    eprintln!("{verdict}");
    emit(&verdict_json(&verdict), output)
}
