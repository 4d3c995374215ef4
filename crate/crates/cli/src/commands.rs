use std::path::Path;

use multidisc::bilinear::{
    coeff_name, degree_bound, disc_p11, disc_via_elimination, eliminate_y, generic_root_count,
    mv_term_via_permanent,
};
use multidisc::binary_form::{binary_form_discriminant_with_chart, BinaryForm};
use multidisc::ideal::{derivative_matrix, product_ideal_certificate, row_subsets, DerivGroup};
use multidisc::matrix::{PolyMatrix, MAX_PERM_SIZE};
use multidisc::rational::{format_rational, parse_rational};
use multidisc::sampling::{nonzero_int, sampler};
use multidisc::sparse3::{
    build_disc_matrix, disc_determinantal, disc_expanded, eliminate_to_quadratic, singular_instance, TriRoot,
    DETERMINANTAL_SIGN,
};
use multidisc::verify::{self, Suite, VerifyConfig};
use multidisc::{MultiPoly, Rational, VarRef};
use serde_json::{json, Value};

use crate::report::Report;
use crate::system_file::{System, SystemFile};
use crate::{CliError, Command, GroupArg};

type CmdResult = Result<Report, CliError>;

pub fn execute(command: Command) -> CmdResult {
    match command {
        Command::Disc { input } => disc(&input),
        Command::Matrix { input, group } => matrix(&input, group),
        Command::Bound { n, m } => bound(n as usize, m as usize),
        Command::Count { n, m } => count(n as usize, m as usize),
        Command::Oracle { input } => oracle(&input),
        Command::SingularGen { seed, root, lambda, out } => {
            singular_gen(seed, root.as_deref(), lambda.as_deref(), out.as_deref())
        }
        Command::Certificate => certificate(),
        Command::Verify { suite, seed, samples } => verify_cmd(&suite, seed, samples),
    }
}

fn load(path: &Path) -> Result<(SystemFile, System), CliError> {
    let file = SystemFile::read(path).map_err(CliError::Input)?;
    let system = file.to_system().map_err(CliError::Input)?;
    Ok((file, system))
}

fn constant(p: &MultiPoly) -> Result<String, CliError> {
    p.as_constant().map(|r| format_rational(&r)).ok_or_else(|| CliError::input("non-constant result"))
}

fn rationals(v: &[Rational]) -> Value {
    Value::from(v.iter().map(format_rational).collect::<Vec<_>>())
}

fn matrix_rows(m: &PolyMatrix) -> Result<Value, CliError> {
    let rows = (0..m.rows())
        .map(|r| m.row(r).iter().map(constant).collect::<Result<Vec<_>, _>>().map(Value::from))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Value::from(rows))
}

fn file_report(command: &'static str, path: &Path, file: &SystemFile) -> Report {
    Report::new(command).input("input", path.display().to_string()).input("kind", file.kind())
}

fn disc(path: &Path) -> CmdResult {
    let (file, system) = load(path)?;
    let mut report = file_report("disc", path, &file);
    match system {
        System::Bilinear(sys) => {
            report = report.input("n", sys.n()).input("m", sys.m());
            let elim = disc_via_elimination(&sys).map_err(CliError::input)?;
            let elim_s = constant(&elim)?;
            if sys.n() == 1 && sys.m() == 1 {
                let closed = disc_p11(&sys).map_err(CliError::input)?;
                report.result("p11", constant(&closed)?);
                report.result("elimination", elim_s);
                let consistent = closed == elim;
                report.result("consistent", consistent);
                if !consistent {
                    return Err(CliError::Property(
                        Box::new(report),
                        "closed form and elimination disagree".into(),
                    ));
                }
            } else {
                report.result("elimination", elim_s);
            }
            Ok(report)
        }
        System::ThreePlayer(sys) => {
            let expanded = disc_expanded(&sys);
            let det = disc_determinantal(&sys).map_err(CliError::input)?;
            report.result("expanded", constant(&expanded)?);
            report.result("determinantal", constant(&det)?);
            let elim = match eliminate_to_quadratic(&sys) {
                Ok(q) => Some(binary_form_discriminant_with_chart(&q).map_err(CliError::input)?.0),
                Err(multidisc::Error::IdenticallyZero) => None,
                Err(e) => return Err(CliError::input(e)),
            };
            report.result("elimination", elim.as_ref().map(constant).transpose()?);
            report.epsilon = Some(DETERMINANTAL_SIGN);
            let eps = Rational::from_integer(DETERMINANTAL_SIGN.into());
            let mut problems = Vec::new();
            if det != expanded.scale(&eps) {
                problems.push("determinantal and expanded differ by more than the sign");
            }
            if elim.is_some_and(|e| e != expanded) {
                problems.push("elimination and expanded disagree");
            }
            report.result("consistent", problems.is_empty());
            if !problems.is_empty() {
                return Err(CliError::Property(Box::new(report), problems.join("; ")));
            }
            Ok(report)
        }
    }
}

fn matrix(path: &Path, group: GroupArg) -> CmdResult {
    let (file, system) = load(path)?;
    let mut report = file_report("matrix", path, &file);
    match system {
        System::ThreePlayer(sys) => {
            report.result("labels", Value::from(vec!["x1", "x0", "y1", "y0", "z1", "z0"]));
            report.result("matrix", matrix_rows(&build_disc_matrix(&sys))?);
        }
        System::Bilinear(sys) => {
            let g = match group {
                GroupArg::X => DerivGroup::X,
                GroupArg::Y => DerivGroup::Y,
            };
            report = report.input("group", if g == DerivGroup::X { "x" } else { "y" });
            let d = derivative_matrix(&sys, g);
            let index: Vec<String> = d.row_index.iter().map(|(k, l)| format!("{}:{}", k + 1, l)).collect();
            report.result("rows", Value::from(index));
            report.result("matrix", matrix_rows(&d.matrix)?);
        }
    }
    Ok(report)
}

fn bound(n: usize, m: usize) -> CmdResult {
    let b = degree_bound(n, m).map_err(CliError::input)?;
    let mut report = Report::new("bound").input("n", n).input("m", m);
    report.result("mv_term", b.mv_term.to_string());
    report.result("per_group", b.per_group.to_string());
    report.result("total", b.total.to_string());
    if n + m <= MAX_PERM_SIZE {
        let via_perm = mv_term_via_permanent(n, m).map_err(CliError::input)?;
        report.result("mv_term_via_permanent", format_rational(&via_perm));
        if via_perm != Rational::from_integer(b.mv_term.into()) {
            return Err(CliError::Property(
                Box::new(report),
                "permanent disagrees with the closed form".into(),
            ));
        }
    }
    Ok(report)
}

fn count(n: usize, m: usize) -> CmdResult {
    let c = generic_root_count(n, m).map_err(CliError::input)?;
    let mut report = Report::new("count").input("n", n).input("m", m);
    report.result("count", c.to_string());
    report.text = Some(format!("{c}\n"));
    Ok(report)
}

fn form_report(report: &mut Report, form: &BinaryForm) -> Result<(), CliError> {
    let coeffs: Vec<String> = form.coeffs().iter().map(constant).collect::<Result<_, _>>()?;
    report.result("form", Value::from(coeffs));
    let (disc, chart) = binary_form_discriminant_with_chart(form).map_err(CliError::input)?;
    report.result("chart", chart.to_string());
    report.result("discriminant", constant(&disc)?);
    Ok(())
}

fn oracle(path: &Path) -> CmdResult {
    let (file, system) = load(path)?;
    let mut report = file_report("oracle", path, &file);
    let form = match system {
        System::Bilinear(sys) if sys.n() == 1 => eliminate_y(&sys),
        System::Bilinear(sys) if sys.m() == 1 => eliminate_y(&sys.transposed()),
        System::Bilinear(sys) => {
            return Err(CliError::Input(format!(
                "elimination needs n = 1 or m = 1, got n = {}, m = {}",
                sys.n(),
                sys.m()
            )))
        }
        System::ThreePlayer(sys) => eliminate_to_quadratic(&sys),
    }
    .map_err(CliError::input)?;
    form_report(&mut report, &form)?;
    Ok(report)
}

fn parse_list(s: &str, sep: char, len: usize, what: &str) -> Result<Vec<Rational>, CliError> {
    let parts: Vec<&str> = s.split(sep).map(str::trim).collect();
    if parts.len() != len {
        return Err(CliError::Input(format!("{what} needs {len} entries separated by {sep:?}")));
    }
    parts.iter().map(|p| parse_rational(p).map_err(CliError::input)).collect()
}

fn parse_root(s: &str) -> Result<TriRoot, CliError> {
    let pairs: Vec<&str> = s.split(',').collect();
    if pairs.len() != 3 {
        return Err(CliError::input("root must look like x1:x0,y1:y0,z1:z0"));
    }
    let pair = |p: &str| -> Result<[Rational; 2], CliError> {
        let v = parse_list(p, ':', 2, "root pair")?;
        Ok([v[0].clone(), v[1].clone()])
    };
    TriRoot::new(pair(pairs[0])?, pair(pairs[1])?, pair(pairs[2])?).map_err(CliError::input)
}

fn root_string(root: &TriRoot) -> String {
    [&root.x, &root.y, &root.z]
        .iter()
        .map(|p| format!("{}:{}", format_rational(&p[0]), format_rational(&p[1])))
        .collect::<Vec<_>>()
        .join(",")
}

fn singular_gen(seed: u64, root: Option<&str>, lambda: Option<&str>, out: Option<&Path>) -> CmdResult {
    let mut rng = sampler(seed, 0);
    let root = match root {
        Some(s) => parse_root(s)?,
        None => TriRoot::random(&mut rng),
    };
    let lambda: [Rational; 3] = match lambda {
        Some(s) => parse_list(s, ',', 3, "lambda")?.try_into().expect("three entries"),
        None => std::array::from_fn(|_| nonzero_int(&mut rng, -5, 5)),
    };
    let sys = singular_instance(&root, &lambda, &mut rng).map_err(CliError::input)?;
    let file = SystemFile::from_three_player(&sys).map_err(CliError::Input)?;

    let mut report = Report::new("singular-gen").input("seed", seed);
    report.result("root", root_string(&root));
    report.result("lambda", rationals(&lambda));
    report.result("discriminant", constant(&disc_expanded(&sys))?);
    let system_json: Value = serde_json::from_str(&file.to_json()).expect("valid json");
    match out {
        Some(path) => {
            std::fs::write(path, file.to_json() + "\n")
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            report = report.input("out", path.display().to_string());
            report.result("written", path.display().to_string());
        }
        None => {
            report.text = Some(file.to_json() + "\n");
            report.result("system", system_json);
        }
    }
    Ok(report)
}

fn certificate() -> CmdResult {
    let cert = product_ideal_certificate().map_err(|e| match e {
        multidisc::Error::NoCertificate => {
            CliError::Property(Box::new(Report::new("certificate")), e.to_string())
        }
        e => CliError::input(e),
    })?;
    let subsets: Vec<String> =
        row_subsets(4, 2).iter().map(|s| s.iter().map(|r| (r + 1).to_string()).collect()).collect();
    let table: Vec<Value> = (0..cert.x_minors.len())
        .map(|i| {
            rationals(
                &(0..cert.y_minors.len()).map(|j| cert.coefficients[&(i, j)].clone()).collect::<Vec<_>>(),
            )
        })
        .collect();
    let name = |v: VarRef| coeff_name(v);
    let show = |p: &MultiPoly| p.display_with(&name).to_string();

    let mut report = Report::new("certificate");
    report.result("row_subsets", Value::from(subsets.clone()));
    report.result("x_minors", Value::from(cert.x_minors.iter().map(show).collect::<Vec<_>>()));
    report.result("y_minors", Value::from(cert.y_minors.iter().map(show).collect::<Vec<_>>()));
    report.result("coefficients", Value::from(table.clone()));
    report.result("nullity", cert.nullity);
    report.result("residual", show(&cert.residual));

    let mut text = String::from("discriminant = sum of c_ij M_i N_j\n");
    text.push_str(&format!("minors indexed by row pairs {}\n", subsets.join(" ")));
    let header: Vec<Value> =
        std::iter::once(json!("c_ij")).chain(subsets.iter().map(|s| json!(format!("N{s}")))).collect();
    let body = table.iter().zip(&subsets).map(|(row, s)| {
        let mut cells = vec![json!(format!("M{s}"))];
        cells.extend(row.as_array().expect("row").iter().cloned());
        Value::from(cells)
    });
    text.push_str(&crate::report::table(
        &std::iter::once(Value::from(header)).chain(body).collect::<Vec<_>>(),
    ));
    text.push_str(&format!("nullity: {}\nresidual: {}\n", cert.nullity, show(&cert.residual)));
    report.text = Some(text);

    if !cert.residual.is_zero() {
        return Err(CliError::Property(Box::new(report), "residual is not zero".into()));
    }
    Ok(report)
}

fn verify_cmd(suite: &str, seed: u64, samples: usize) -> CmdResult {
    let suite: Suite = suite.parse().map_err(CliError::input)?;
    let verdict = verify::run(suite, &VerifyConfig { seed, samples });
    let mut report =
        Report::new("verify").input("suite", suite.name()).input("seed", seed).input("samples", samples);
    let checks: Vec<Value> = verdict
        .outcomes
        .iter()
        .map(|o| json!({"suite": o.suite.name(), "name": o.name, "passed": o.passed, "detail": o.detail}))
        .collect();
    report.result("checks", Value::from(checks));
    report.result("passed", verdict.all_passed());
    report.epsilon = verdict.epsilon;

    let mut text = String::new();
    for o in &verdict.outcomes {
        let mark = if o.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("{mark} {:<5} {} ({})\n", o.suite.name(), o.name, o.detail));
    }
    if let Some(e) = verdict.epsilon {
        text.push_str(&format!("epsilon: {e}\n"));
    }
    report.text = Some(text);

    if !verdict.all_passed() {
        let failed = verdict.outcomes.iter().filter(|o| !o.passed).count();
        return Err(CliError::Property(Box::new(report), format!("{failed} check(s) failed")));
    }
    Ok(report)
}
