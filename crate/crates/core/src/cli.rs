//! The `qdiff` command line. [`run`] does all the work and returns the exit
//! code together with the text for stdout and stderr.

use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{pbw_basis, Algebra, AlgebraSpec};
use crate::catalog::Family;
use crate::diffop::{
    covariant_lift_check, path_operator, poisson_bracket, q_derivative, wave_operator, wave_operator_check,
    LiftVersion, Reading,
};
use crate::dual::{dual_relations, pair_symmetrized, star_poly, DualElement, PolyRep, RepScheme};
use crate::error::{Error, Result};
use crate::qsym::{check_budget, q_symmetrize};
use crate::ring::{QCoeff, Rational};
use crate::tensor::TensorElement;
use crate::verify::{run_suite, Suite, VerifyOptions};

#[derive(Parser, Debug)]
#[command(name = "qdiff", version, about = "Exact q-symmetrization and quantized differential operators")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Largest total degree swept by checks.
    #[arg(long, global = true, default_value_t = 4)]
    max_degree: usize,
    /// Dual representation scheme.
    #[arg(long, global = true, value_enum, default_value_t = SchemeArg::F2)]
    scheme: SchemeArg,
    /// Also print coefficients evaluated at this rational value of q.
    #[arg(long, global = true)]
    q_at: Option<String>,
    /// Lift the degree budget.
    #[arg(long, global = true)]
    force: bool,
    /// Accept tails of degree 0 or 1 in the spec.
    #[arg(long, global = true)]
    relaxed: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SchemeArg {
    F1,
    F2,
}

impl From<SchemeArg> for RepScheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::F1 => RepScheme::F1,
            SchemeArg::F2 => RepScheme::F2,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LiftArg {
    #[value(name = "AF", alias = "af")]
    Af,
    #[value(name = "BG", alias = "bg")]
    Bg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Stars,
    Braid,
    ClosedForms,
    Paths,
    OppositeRelations,
    Lifts,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Stars => Suite::Stars,
            SuiteArg::Braid => Suite::Braid,
            SuiteArg::ClosedForms => Suite::ClosedForms,
            SuiteArg::Paths => Suite::Paths,
            SuiteArg::OppositeRelations => Suite::OppositeRelations,
            SuiteArg::Lifts => Suite::Lifts,
            SuiteArg::All => Suite::All,
        }
    }
}

/// `SPEC` is a `.qalg` file, `-` for stdin, or a catalog name like `aiii(2)`.
#[derive(Subcommand, Debug)]
enum Command {
    /// Runs the scaling-automorphism and overlap checks.
    Check { spec: String },
    /// Normal form of a tensor expression such as `X4.X1`.
    NormalForm { spec: String, expr: String },
    /// The q-symmetrization projector applied to a tensor expression.
    Qsym { spec: String, expr: String },
    /// Pairs a dual element `X1*.X2*` with the projected tensor.
    Pair { spec: String, dual: String, expr: String },
    /// Star product of two polynomials in z1..zN.
    Star { spec: String, f: String, g: String },
    /// Commutation exponents of the dual generators.
    DualRelations { spec: String },
    /// The q-derivative along a generator (index or name).
    Derive { spec: String, gen: String, poly: String },
    /// Spot values and identities of the wave operator on the 2x2 quantum matrices.
    WaveCheck {
        spec: String,
        /// Apply the wave operator to this polynomial instead.
        poly: Option<String>,
    },
    /// The semiclassical bracket of two polynomials.
    Poisson { spec: String, f: String, g: String },
    /// The path-sum operator for d[i,j] on the n x n quantum matrices.
    PathOp {
        spec: String,
        i: usize,
        j: usize,
        /// Use the reading that agrees with the duality derivative.
        #[arg(long)]
        adjusted: bool,
    },
    /// Checks a lift identity for one polynomial or all monomials up to --max-degree.
    LiftCheck {
        spec: String,
        #[arg(value_enum)]
        version: LiftArg,
        poly: Option<String>,
        #[arg(long)]
        adjusted: bool,
    },
    /// Runs a verification suite.
    Verify {
        spec: String,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// Prints a built-in algebra as `.qalg`.
    Catalog { family: String, param: Option<usize> },
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command. `args[0]` is the program name. `stdin` is read only
/// when a spec argument is `-`.
pub fn run<S: AsRef<str>>(args: &[S], stdin: &mut dyn Read) -> Outcome {
    let cli = match Cli::try_parse_from(args.iter().map(|s| s.as_ref())) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut out = String::new();
    match execute(&cli, stdin, &mut out) {
        Ok(ok) => Outcome {
            code: if ok { 0 } else { 1 },
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => {
            let code = match e {
                Error::NotQuasipolynomial(_) | Error::NotValidated(_) => 1,
                _ => 2,
            };
            Outcome {
                code,
                stdout: out,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn load(spec: &str, relaxed: bool, stdin: &mut dyn Read) -> Result<Algebra> {
    let text = if spec == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidSpec(format!("reading stdin: {e}")))?;
        s
    } else {
        match std::fs::read_to_string(spec) {
            Ok(s) => s,
            Err(io) => {
                return match spec.parse::<Family>() {
                    Ok(f) => Algebra::new(f.spec()),
                    Err(_) => Err(Error::InvalidSpec(format!("cannot read '{spec}': {io}"))),
                }
            }
        }
    };
    let parsed = if relaxed {
        AlgebraSpec::from_qalg_relaxed(&text)
    } else {
        AlgebraSpec::from_qalg(&text)
    }?;
    Algebra::new(parsed)
}

fn generator(alg: &Algebra, s: &str) -> Result<usize> {
    let n = alg.n_gens();
    // names win over the positional X<k> / z<k> forms
    if let Some(g) = (1..=n).find(|&g| alg.spec().gen_name(g) == s) {
        return Ok(g);
    }
    s.trim_start_matches(['X', 'z'])
        .parse::<usize>()
        .ok()
        .filter(|g| (1..=n).contains(g))
        .ok_or_else(|| Error::InvalidSpec(format!("unknown generator '{s}'")))
}

struct Display<'a> {
    q_at: Option<Rational>,
    out: &'a mut String,
}

impl Display<'_> {
    fn line(&mut self, s: impl std::fmt::Display) {
        writeln!(self.out, "{s}").unwrap();
    }

    fn coeff(&mut self, c: &QCoeff) -> Result<()> {
        self.line(c);
        if let Some(q) = self.q_at.clone() {
            self.line(format_args!("at q = {q}: {}", c.eval(&q)?));
        }
        Ok(())
    }

    fn tensor(&mut self, t: &TensorElement) -> Result<()> {
        self.line(t);
        if let Some(q) = &self.q_at {
            let terms = t
                .sorted_terms()
                .into_iter()
                .map(|(w, c)| Ok(format!("{} * {w}", c.eval(q)?)))
                .collect::<Result<Vec<_>>>()?;
            self.at_q(q.clone(), terms);
        }
        Ok(())
    }

    fn poly(&mut self, f: &PolyRep) -> Result<()> {
        self.line(f);
        if let Some(q) = &self.q_at {
            let terms = f
                .sorted_terms()
                .into_iter()
                .map(|(e, c)| {
                    let mut m: String = e
                        .iter()
                        .enumerate()
                        .filter(|(_, &k)| k > 0)
                        .map(|(v, k)| format!("z{}^{k}", v + 1))
                        .collect();
                    if m.is_empty() {
                        m.push('1');
                    }
                    Ok(format!("{} * {m}", c.eval(q)?))
                })
                .collect::<Result<Vec<_>>>()?;
            self.at_q(q.clone(), terms);
        }
        Ok(())
    }

    fn at_q(&mut self, q: Rational, terms: Vec<String>) {
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        self.line(format_args!("at q = {q}: {body}"));
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read, out: &mut String) -> Result<bool> {
    let g = &cli.global;
    let q_at = g
        .q_at
        .as_deref()
        .map(|s| s.parse::<Rational>().map_err(|_| Error::parse(1, format!("bad rational '{s}' for --q-at"))))
        .transpose()?;
    let scheme: RepScheme = g.scheme.into();
    let mut d = Display { q_at, out };
    let poly = |alg: &Algebra, s: &str| PolyRep::parse(s, alg.n_gens());
    match &cli.command {
        Command::Check { spec } => {
            let alg = load(spec, g.relaxed, stdin)?;
            let r = alg.validate();
            d.line(format_args!(
                "scaling automorphisms: {} relations checked, {} failures",
                r.dcp.relations_checked,
                r.dcp.failures.len()
            ));
            for f in &r.dcp.failures {
                d.line(format_args!(
                    "  generator {} relation {:?}: residual {}",
                    f.generator, f.relation, f.residual
                ));
            }
            d.line(format_args!(
                "overlaps: {} checked, {} unresolved",
                r.diamond.overlaps_checked,
                r.diamond.failures.len()
            ));
            for a in &r.diamond.failures {
                d.line(format_args!("  {:?}: difference {}", a.triple, a.difference()));
            }
            d.line(if r.passed() { "PASS" } else { "FAIL" });
            Ok(r.passed())
        }
        Command::NormalForm { spec, expr } => {
            let alg = load(spec, g.relaxed, stdin)?;
            let t: TensorElement = expr.parse()?;
            alg.check_letters(&t)?;
            d.tensor(&alg.normal_form(&t))?;
            Ok(true)
        }
        Command::Qsym { spec, expr } => {
            let alg = load(spec, g.relaxed, stdin)?;
            let t: TensorElement = expr.parse()?;
            for deg in t.degrees() {
                check_budget(alg.n_gens(), deg, g.force)?;
            }
            d.tensor(&q_symmetrize(&alg, &t)?)?;
            Ok(true)
        }
        Command::Pair { spec, dual, expr } => {
            let alg = load(spec, g.relaxed, stdin)?;
            let w: DualElement = dual.parse()?;
            let t: TensorElement = expr.parse()?;
            d.coeff(&pair_symmetrized(&alg, &w, &t)?)?;
            Ok(true)
        }
        Command::Star { spec, f, g: h } => {
            let alg = load(spec, g.relaxed, stdin)?;
            let (a, b) = (poly(&alg, f)?, poly(&alg, h)?);
            d.poly(&star_poly(&alg, &a, &b, scheme)?)?;
            Ok(true)
        }
        Command::DualRelations { spec } => {
            let alg = load(spec, g.relaxed, stdin)?;
            for r in dual_relations(&alg)? {
                d.line(format_args!("X{}*.X{}* = q^{} X{}*.X{}*", r.i, r.j, r.exponent, r.j, r.i));
            }
            Ok(true)
        }
        Command::Derive { spec, gen, poly: p } => {
            let alg = load(spec, g.relaxed, stdin)?;
            let k = generator(&alg, gen)?;
            d.poly(&q_derivative(&alg, k, &poly(&alg, p)?, scheme)?)?;
            Ok(true)
        }
        Command::WaveCheck { spec, poly: p } => {
            let alg = load(spec, g.relaxed, stdin)?;
            if let Some(p) = p {
                d.poly(&wave_operator(&alg, &poly(&alg, p)?)?)?;
                return Ok(true);
            }
            let mut ok = true;
            for (m, want) in [("z1^1z4^1", "1"), ("z2^1z3^1", "-1q^1")] {
                let got = wave_operator(&alg, &poly(&alg, m)?)?;
                let pass = got == poly(&alg, want)?;
                ok &= pass;
                d.line(format_args!("{} wave({m}) = {got}", tag(pass)));
            }
            let deg = g.max_degree;
            let r = wave_operator_check(&alg, deg, deg.saturating_sub(1))?;
            d.line(format_args!(
                "{} wave = K2 K3 d1 d4 - q d2 d3 on {} monomials, {} failures",
                tag(r.identity_failures.is_empty()),
                r.identity_checked,
                r.identity_failures.len()
            ));
            d.line(format_args!(
                "{} wave commutes with d1..d4 on {} cases, {} failures",
                tag(r.commutation_failures.is_empty()),
                r.commutation_checked,
                r.commutation_failures.len()
            ));
            Ok(ok && r.passed())
        }
        Command::Poisson { spec, f, g: h } => {
            let alg = load(spec, g.relaxed, stdin)?;
            let (a, b) = (poly(&alg, f)?, poly(&alg, h)?);
            d.poly(&poisson_bracket(&alg, &a, &b, scheme)?)?;
            Ok(true)
        }
        Command::PathOp { spec, i, j, adjusted } => {
            let alg = load(spec, g.relaxed, stdin)?;
            let po = path_operator(&alg, *i, *j, reading(*adjusted))?;
            for (p, t) in po.paths.iter().zip(&po.op.terms) {
                let single = crate::diffop::StructuredOp {
                    terms: vec![t.clone()],
                    ..po.op.clone()
                };
                d.line(format_args!("{p}: {single}"));
            }
            d.line(format_args!("d[{i},{j}] = {}", po.op));
            Ok(true)
        }
        Command::LiftCheck { spec, version, poly: p, adjusted } => {
            let alg = load(spec, g.relaxed, stdin)?;
            let version = match version {
                LiftArg::Af => LiftVersion::AF,
                LiftArg::Bg => LiftVersion::BG,
            };
            let polys = match p {
                Some(p) => vec![poly(&alg, p)?],
                None => (0..=g.max_degree)
                    .flat_map(|k| pbw_basis(alg.n_gens(), k))
                    .map(|e| PolyRep::monomial(alg.n_gens(), e, QCoeff::one()))
                    .collect(),
            };
            let mut bad = 0;
            for f in &polys {
                let r = covariant_lift_check(&alg, version, f, reading(*adjusted))?;
                for m in &r.mismatches {
                    d.line(format_args!("FAIL {f} row {}: {} != {}", m.row, m.lhs, m.rhs));
                }
                bad += usize::from(!r.passed());
            }
            d.line(format_args!(
                "{} {version} lift: {} polynomials, {bad} failures",
                tag(bad == 0),
                polys.len()
            ));
            Ok(bad == 0)
        }
        Command::Verify { spec, suite } => {
            let alg = load(spec, g.relaxed, stdin)?;
            let opts = VerifyOptions {
                max_degree: g.max_degree,
                force: g.force,
            };
            let mut ok = true;
            for r in run_suite(&alg, (*suite).into(), opts)? {
                ok &= r.passed();
                d.line(&r);
            }
            Ok(ok)
        }
        Command::Catalog { family, param } => {
            let f = match param {
                Some(_) => Family::from_parts(family, *param)?,
                None => family.parse()?,
            };
            d.out.push_str(&f.spec().to_qalg());
            Ok(true)
        }
    }
}

fn reading(adjusted: bool) -> Reading {
    if adjusted {
        Reading::Adjusted
    } else {
        Reading::AsWritten
    }
}

fn tag(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}
