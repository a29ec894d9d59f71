use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use torfol::foliation::{
    check_foliation, deformation_space, gamma_sets, is_deformation, kupka_ideal, kupka_set_presentation, singular_ideal,
    unfoldings_ideal_membership, unfoldings_space, verify_unfolding_witness,
};
use torfol::forms::KForm;
use torfol::groebner::{Engine, MonomialOrder, DEFAULT_STEP_BUDGET};
use torfol::ratmap::{deformation_split, flag_builder, pullback_ideals};
use torfol::toric::{class_group, radial_fields, DegreeVector, Fan, GradingData};

use crate::error::CliError;
use crate::report::Report;
use crate::schema::{from_json, FanSpec, FormSpec, MapSpec, PerturbationSpec};
use crate::{fixtures, parse, print, verify};

pub const BUDGET_VAR: &str = "TORFOL_STEP_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "torfol", version, about = "Foliations on simplicial toric varieties")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = Order::Grevlex, global = true)]
    pub order: Order,
    /// Reduction steps before a computation is abandoned (exit code 3);
    /// defaults to $TORFOL_STEP_BUDGET, then 10^7.
    #[arg(long, global = true)]
    pub step_budget: Option<u64>,
    /// Log progress to stderr (-v info, -vv debug).
    #[arg(short, long, action = ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Grevlex,
    Lex,
}

#[derive(Args, Debug)]
pub struct FormArgs {
    /// Fan file, or `@name` for a bundled fixture.
    #[arg(long)]
    pub fan: String,
    /// Form file, or `@name`.
    #[arg(long)]
    pub form: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Class group, degrees, irrelevant ideal and radial fields of a fan.
    FanInfo {
        #[arg(long)]
        fan: String,
    },
    /// Descent, decomposability, integrability and codimension of Sing.
    Check(FormArgs),
    /// J(α), K(α) and (J : C(dα)^∞) as reduced Gröbner bases.
    Ideals(FormArgs),
    /// The sets of non-consecutive pairs meeting J, K and the Kupka set.
    Gamma(FormArgs),
    /// Pull a form on the fan back along a map from projective space.
    Pullback {
        #[arg(long)]
        fan: String,
        #[arg(long)]
        map: String,
        #[arg(long)]
        form: String,
    },
    /// First-order deformations; with a map and a perturbation, the split τ = τ1 + τ2.
    Deform {
        #[command(flatten)]
        input: FormArgs,
        #[arg(long, requires = "perturbation")]
        map: Option<String>,
        #[arg(long, requires = "map")]
        perturbation: Option<String>,
    },
    /// Graded first-order unfoldings in one degree.
    Unfold {
        #[command(flatten)]
        input: FormArgs,
        /// Degree as comma-separated components (free, then torsion);
        /// defaults to the degree of the form.
        #[arg(long)]
        degree: Option<String>,
        /// Decide whether this polynomial lies in the unfoldings ideal.
        #[arg(long)]
        member: Option<String>,
    },
    /// The flag of foliations through the weighted presentation of a map.
    Flag {
        #[arg(long)]
        fan: String,
        #[arg(long)]
        map: String,
    },
    /// Run the bundled worked examples and identities.
    PaperVerify {
        /// Only these criteria (comma-separated numbers).
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

pub struct Session {
    pub engine: Engine,
    pub order: MonomialOrder,
    pub budget: u64,
}

/// `--step-budget`, else the environment override, else the default.
pub fn resolve_budget(flag: Option<u64>, env: Option<String>) -> Result<u64, CliError> {
    match (flag, env) {
        (Some(b), _) => Ok(b),
        (None, Some(v)) => v.trim().parse().map_err(|_| CliError::Input(format!("{BUDGET_VAR}={v} is not a step count"))),
        (None, None) => Ok(DEFAULT_STEP_BUDGET),
    }
}

fn load(report: &mut Report, source: &str) -> Result<String, CliError> {
    let text = match source.strip_prefix('@') {
        Some(name) => fixtures::get(name)
            .map(str::to_string)
            .ok_or_else(|| CliError::Input(format!("no bundled fixture `{name}` (have: {})", fixtures::names().collect::<Vec<_>>().join(", "))))?,
        None => std::fs::read_to_string(source).map_err(|e| CliError::Input(format!("{source}: {e}")))?,
    };
    report.input(source, &text);
    Ok(text)
}

struct Loaded {
    fan: Fan,
    grading: GradingData,
    vars: Vec<String>,
}

fn load_fan(report: &mut Report, source: &str) -> Result<Loaded, CliError> {
    let (fan, vars) = from_json::<FanSpec>(&load(report, source)?, source)?.build()?;
    let grading = class_group(&fan)?;
    Ok(Loaded { fan, grading, vars })
}

fn load_form(report: &mut Report, fan: &Loaded, source: &str) -> Result<(KForm, Vec<String>), CliError> {
    from_json::<FormSpec>(&load(report, source)?, source)?.build(&fan.vars)
}

fn load_map(report: &mut Report, source: &str) -> Result<MapSpec, CliError> {
    from_json::<MapSpec>(&load(report, source)?, source)
}

fn class_group_name(g: &GradingData) -> String {
    let mut parts = Vec::new();
    match g.free_rank() {
        0 => {}
        1 => parts.push("Z".to_string()),
        s => parts.push(format!("Z^{s}")),
    }
    parts.extend(g.torsion_orders().iter().map(|o| format!("Z{o}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" x ")
    }
}

fn tuple(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn degree_text(d: &Option<DegreeVector>) -> String {
    d.as_ref().map(|d| d.to_string()).unwrap_or_else(|| "undefined".into())
}

fn parse_degree(text: &str, g: &GradingData) -> Result<DegreeVector, CliError> {
    let comps: Vec<i64> = text
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| CliError::Input(format!("bad degree `{text}`"))))
        .collect::<Result<_, _>>()?;
    let (s, t) = (g.free_rank(), g.torsion_orders().len());
    if comps.len() != s + t {
        return Err(CliError::Input(format!("degree `{text}` needs {} components ({s} free, {t} torsion)", s + t)));
    }
    Ok(g.degree(comps[..s].to_vec(), comps[s..].to_vec())?)
}

fn fan_info(r: &mut Report, fan: &str) -> Result<(), CliError> {
    let l = load_fan(r, fan)?;
    let g = &l.grading;
    r.push("dimension", l.fan.dim());
    r.push("rays", l.fan.nrays());
    r.push("class group", class_group_name(g));
    r.push("degrees", l.vars.iter().zip(g.degrees()).map(|(v, d)| format!("{v}: {d}")).collect::<Vec<_>>());
    r.push("anticanonical degree", g.anticanonical().to_string());
    r.push("relations", g.relation_basis().iter().map(|v| tuple(v)).collect::<Vec<_>>());
    r.push("irrelevant ideal", print::generators(&l.fan.irrelevant_ideal(), &l.vars));
    r.push("radial fields", radial_fields(g).iter().map(|y| print::field(y, &l.vars)).collect::<Vec<_>>());
    if l.fan.dim() == 2 {
        r.push("non-consecutive pairs", print::pairs(&l.fan.non_consecutive_pairs()));
    }
    Ok(())
}

fn check_form(s: &Session, r: &mut Report, input: &FormArgs) -> Result<(), CliError> {
    let l = load_fan(r, &input.fan)?;
    let (a, _) = load_form(r, &l, &input.form)?;
    let f = check_foliation(&s.engine, &a, &l.grading)?;
    r.push("k", a.k());
    r.push("degree", degree_text(&f.degree));
    r.check("descent", f.checks.descent);
    r.check("decomposable", f.checks.decomposable);
    r.check("integrable", f.checks.integrable);
    r.push("codim Sing", f.checks.singular_codim);
    r.check("codim Sing >= 2", f.checks.codim_ok());
    Ok(())
}

fn ideals(s: &Session, r: &mut Report, input: &FormArgs) -> Result<(), CliError> {
    let l = load_fan(r, &input.fan)?;
    let (a, vars) = load_form(r, &l, &input.form)?;
    let j = singular_ideal(&a);
    let k = kupka_ideal(&s.engine, &a)?;
    let sat = kupka_set_presentation(&s.engine, &a)?;
    for (name, i) in [("J", &j), ("K", &k), ("J : C(d alpha)^inf", &sat)] {
        r.push(name, print::ideal(&s.engine, i, s.order, &vars)?);
        r.push(&format!("codim {name}"), s.engine.codimension(i)?);
    }
    r.push("K = J", s.engine.ideal_equal(&k, &j)?);
    Ok(())
}

fn gamma(s: &Session, r: &mut Report, input: &FormArgs) -> Result<(), CliError> {
    let l = load_fan(r, &input.fan)?;
    let (a, _) = load_form(r, &l, &input.form)?;
    let sets = gamma_sets(&s.engine, &a, &l.fan)?;
    r.push("Gamma_alpha", print::pairs(&sets.gamma));
    r.push("Gamma_alpha,K", print::pairs(&sets.gamma_kupka));
    r.push("Gamma^set_alpha,K", print::pairs(&sets.gamma_kupka_set));
    Ok(())
}

fn pullback(s: &Session, r: &mut Report, fan: &str, map: &str, form: &str) -> Result<(), CliError> {
    let l = load_fan(r, fan)?;
    let spec = load_map(r, map)?;
    let (a, _) = load_form(r, &l, form)?;
    let f = spec.build(l.fan.clone())?;
    let report = f.validate(&s.engine)?;
    r.push("source degrees", tuple(f.degrees()));
    r.push("codim base locus", report.base_locus_codim);

    let omega = f.pullback(&a)?;
    r.push("omega", print::form(&omega, &spec.source));
    let actual = omega.degree(&f.source_grading()?)?.map(|d| d.free[0]);
    let expected = f.expected_pullback_degree(&a);
    r.push("degree", actual.map(|d| d.to_string()).unwrap_or_else(|| "undefined".into()));
    r.push("expected degree", expected.map(|d| d.to_string()).unwrap_or_else(|| "undefined".into()));
    if actual != expected {
        log::warn!("the pullback has degree {actual:?}, the degree formula gives {expected:?}");
    }
    r.push("degree formula agrees", actual == expected);

    let p = pullback_ideals(&s.engine, &f, &a)?;
    r.push("J(omega)", print::ideal(&s.engine, &p.j_omega, s.order, &spec.source)?);
    r.push("K(omega)", print::ideal(&s.engine, &p.k_omega, s.order, &spec.source)?);
    r.push("A(F)", p.a_of_f.iter().map(|q| print::polynomial(q, &spec.source)).collect::<Vec<_>>());
    r.check("J(omega) in K(omega)", p.j_inside_k);
    r.check("A_k(F) in I(omega) by explicit witness", p.witnesses_accepted.iter().all(|b| *b));
    r.check("A_k(F) in I(omega) by linear solver", p.solver_members.iter().all(|b| *b));
    let flags = spec.flags;
    // equalities that rest on asserted hypotheses are mismatches only when asserted
    let mut dependent = |key: &str, holds: bool, asserted: bool| if asserted { r.check(key, holds) } else { r.push(key, holds) };
    dependent("K(omega) = F*(K(alpha))", p.k_equals_pulled_k, flags.flat_pullback);
    dependent("K(omega) = <A_i(F)>", p.k_equals_a_of_f, flags.flat_pullback && flags.generic);
    r.push("J~(omega) = K(omega)", p.j_tilde_equals_k);

    let j = singular_ideal(&a);
    let dalpha = a.d().coefficient_ideal();
    r.hypothesis("complete lifting", flags.complete, Some(report.complete));
    r.hypothesis("flat pullback", flags.flat_pullback, None);
    r.hypothesis("generic: critical values avoid Sing(alpha)", flags.generic, None);
    r.hypothesis("generic: J(alpha) radical", flags.generic, None);
    r.hypothesis("generic: codim J(alpha) >= 2", flags.generic, Some(s.engine.codimension(&j)? >= 2));
    let c = if dalpha.is_zero() { i64::MAX } else { s.engine.codimension(&dalpha)? };
    r.hypothesis("generic: codim C(d alpha) >= 3", flags.generic, Some(c >= 3));
    Ok(())
}

fn deform(r: &mut Report, input: &FormArgs, map: &Option<String>, perturbation: &Option<String>) -> Result<(), CliError> {
    let l = load_fan(r, &input.fan)?;
    let (a, vars) = load_form(r, &l, &input.form)?;
    let space = deformation_space(&a, &l.grading)?;
    r.push("dim D(alpha)", space.len());
    r.push("basis", space.iter().map(|e| print::form(e, &vars)).collect::<Vec<_>>());
    if let (Some(map), Some(pert)) = (map, perturbation) {
        let spec = load_map(r, map)?;
        let f = spec.build(l.fan.clone())?;
        let p = from_json::<PerturbationSpec>(&load(r, pert)?, pert)?;
        let g = spec.parse_components(&p.g, "G")?;
        let (eta, _) = p.eta.build(&vars)?;
        r.push("eta in D(alpha)", is_deformation(&a, &eta));
        let split = deformation_split(&f, &g, &a, &eta)?;
        r.push("tau", print::form(&split.tau, &spec.source));
        r.push("tau1", print::form(&split.tau1, &spec.source));
        r.push("tau2", print::form(&split.tau2, &spec.source));
        r.check("tau = tau1 + tau2", split.identity_holds);
        r.check("F*(Omega) ^ tau1 = 0", split.tau1_tangent);
    }
    Ok(())
}

fn unfold(r: &mut Report, input: &FormArgs, degree: &Option<String>, member: &Option<String>) -> Result<(), CliError> {
    let l = load_fan(r, &input.fan)?;
    let (a, vars) = load_form(r, &l, &input.form)?;
    let deg = match degree {
        Some(t) => parse_degree(t, &l.grading)?,
        None => a.degree(&l.grading)?.ok_or_else(|| CliError::Input("the zero form has no degree".into()))?,
    };
    let space = unfoldings_space(&a, &l.grading, &deg)?;
    r.push("degree", deg.to_string());
    r.push("dim U", space.len());
    r.push(
        "basis",
        space.iter().map(|u| format!("h = {}; eta = {}", print::polynomial(&u.h, &vars), print::form(&u.eta, &vars))).collect::<Vec<_>>(),
    );
    if let Some(text) = member {
        let h = parse::parse_polynomial(text, &vars).map_err(|e| CliError::Input(format!("--member: {e}")))?;
        match unfoldings_ideal_membership(&a, &l.grading, &h)? {
            Some(w) => {
                r.push("h in I(alpha)", true);
                r.push("witness", print::form(&w, &vars));
                r.check("witness satisfies h d(alpha) = alpha ^ witness", verify_unfolding_witness(&a, &h, &w));
            }
            None => r.push("h in I(alpha)", false),
        }
    }
    Ok(())
}

fn flag(r: &mut Report, fan: &str, map: &str) -> Result<(), CliError> {
    let l = load_fan(r, fan)?;
    let spec = load_map(r, map)?;
    let f = spec.build(l.fan.clone())?;
    let fl = flag_builder(&f)?;
    r.push("basis", fl.basis.iter().map(|v| tuple(v)).collect::<Vec<_>>());
    r.push("eta", fl.etas.iter().map(|e| print::form(e, &l.vars)).collect::<Vec<_>>());
    r.push("omega", fl.omegas.iter().map(|e| print::form(e, &spec.source)).collect::<Vec<_>>());
    r.check("omega_k = pullback of eta_k", fl.pullbacks_agree);
    Ok(())
}

fn paper_verify(s: &Session, r: &mut Report, only: &[usize]) -> Result<(), CliError> {
    let numbers: Vec<usize> = if only.is_empty() { (1..=verify::COUNT).collect() } else { only.to_vec() };
    if let Some(bad) = numbers.iter().find(|n| **n == 0 || **n > verify::COUNT) {
        return Err(CliError::Input(format!("no criterion {bad} (have 1..{})", verify::COUNT)));
    }
    for o in verify::run_all(&numbers, s.budget) {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        r.ok &= o.passed();
        match &o.error {
            Some(e) => r.push(&format!("criterion {}", o.number), format!("{status} {} (error: {e})", o.title)),
            None => r.push(&format!("criterion {}", o.number), format!("{status} {}", o.title)),
        }
        r.push(&format!("criterion {} checks", o.number), o.detail());
    }
    Ok(())
}

pub fn execute(cli: &Cli, echo: String) -> Result<Report, CliError> {
    let budget = resolve_budget(cli.step_budget, std::env::var(BUDGET_VAR).ok())?;
    let order = match cli.order {
        Order::Grevlex => MonomialOrder::GrevLex,
        Order::Lex => MonomialOrder::Lex,
    };
    let s = Session { engine: Engine::new(budget), order, budget };
    let mut r = Report::new(echo);
    match &cli.command {
        Command::FanInfo { fan } => fan_info(&mut r, fan)?,
        Command::Check(input) => check_form(&s, &mut r, input)?,
        Command::Ideals(input) => ideals(&s, &mut r, input)?,
        Command::Gamma(input) => gamma(&s, &mut r, input)?,
        Command::Pullback { fan, map, form } => pullback(&s, &mut r, fan, map, form)?,
        Command::Deform { input, map, perturbation } => deform(&mut r, input, map, perturbation)?,
        Command::Unfold { input, degree, member } => unfold(&mut r, input, degree, member)?,
        Command::Flag { fan, map } => flag(&mut r, fan, map)?,
        Command::PaperVerify { only } => paper_verify(&s, &mut r, only)?,
    }
    Ok(r)
}

/// What a run printed and its exit code: 0 ok, 1 mathematical mismatch,
/// 2 input error, 3 step budget exhausted.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parse `args` (including the program name) and run.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome { stdout: text, stderr: String::new(), code: 0 },
                _ => Outcome { stdout: String::new(), stderr: text, code: 2 },
            };
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new().filter_level(level).format_timestamp(None).try_init();
    let echo = std::iter::once("torfol").chain(args.iter().skip(1).map(String::as_str)).collect::<Vec<_>>().join(" ");
    match execute(&cli, echo) {
        Ok(report) => Outcome {
            stdout: match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            },
            stderr: String::new(),
            code: if report.ok { 0 } else { 1 },
        },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() },
    }
}
