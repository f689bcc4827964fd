//! Command handling for the `opv` binary.
//!
//! Every subcommand produces deterministic output: randomized checks take a
//! `--seed` (default 0) and iteration orders are fixed. Exit codes: 0 on
//! success, 1 on a mathematical failure (a violated identity, a vanishing
//! denominator, a point outside the requested domain), 2 on usage errors.
//! With `--json`, exactly one object `{ "ok": …, "data": …, "witness"?: … }`
//! is emitted on stdout.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use opv::{
    certify_nonvanishing, cocycle_check, enumerate_proj, section_basis, segre, veronese,
    BundleDegree, CertifyOutcome, Error, FieldDescriptor, NonvanishingCertificate, ProjPoint,
    RationalSection, SampleRng,
};

#[derive(Debug, Parser)]
#[command(name = "opv", version, about = "Exact line-bundle geometry over projective space")]
pub struct Cli {
    /// Emit one JSON object {ok, data, witness?} instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SampleOpts {
    /// Check every point of the (finite) field's projective space.
    #[arg(long)]
    pub exhaustive: bool,

    /// Number of seeded sample points when not exhaustive.
    #[arg(long, default_value_t = 100)]
    pub samples: u64,

    /// Seed for reproducible sampling.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension of the space of degree-d polynomial sections on ℙⁿ.
    SectionsDim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u64,
    },
    /// Verify the transition cocycle of O(e) over all chart triples.
    CocycleCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        e: i64,
        #[arg(long)]
        field: String,
        #[command(flatten)]
        sample: SampleOpts,
    },
    /// List every point of ℙⁿ(𝔽_p) in canonical form.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        field: String,
    },
    /// Change chart-k affine coordinates of a point into chart j.
    Overlap {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
        /// Point literal [a0:a1:...:an].
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Veronese embedding of a point of ℙⁿ in degree d.
    Veronese {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Segre embedding of a pair of points of ℙᵐ × ℙⁿ.
    Segre {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long = "pointA", allow_hyphen_values = true)]
        point_a: String,
        #[arg(long = "pointB", allow_hyphen_values = true)]
        point_b: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Verify exactness of the tautological, hyperplane, and Euler fiber
    /// sequences.
    EulerCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        field: String,
        #[command(flatten)]
        sample: SampleOpts,
    },
    /// Evaluate the chart-j local representative of a section at a point.
    SectionEval {
        /// Section literal `degree=<e>; N=<poly>; D=<poly>`.
        #[arg(long, allow_hyphen_values = true)]
        section: String,
        #[arg(long)]
        chart: usize,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Certify that a homogeneous denominator vanishes nowhere.
    CertifyDenominator {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        field: String,
        /// Ambient projective dimension; inferred from the polynomial when
        /// omitted.
        #[arg(long)]
        n: Option<usize>,
    },
}

/// What a finished run wants written and with which status.
#[derive(Debug, PartialEq, Eq)]
pub struct RunResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    /// Bad flags or malformed literals: exit 2.
    Usage(String),
    /// A mathematically meaningful negative outcome: exit 1.
    Math { message: String, witness: Option<Value> },
}

type CmdResult = Result<(String, Value), Failure>;

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

/// Classifies library errors hit while computing: literal problems are usage
/// errors, domain problems are mathematical failures.
fn math(e: Error) -> Failure {
    match e {
        Error::InvalidLiteral { .. }
        | Error::SyntaxError { .. }
        | Error::UnknownVariable { .. }
        | Error::NotPrime(_)
        | Error::DimensionMismatch { .. }
        | Error::DegreeMismatch { .. }
        | Error::MixedFields
        | Error::InfiniteField
        | Error::TooLarge { .. } => usage(e),
        other => Failure::Math {
            message: other.to_string(),
            witness: None,
        },
    }
}

pub fn run(cli: &Cli) -> RunResult {
    let outcome = dispatch(&cli.command);
    render(cli.json, outcome)
}

fn render(json: bool, outcome: CmdResult) -> RunResult {
    match outcome {
        Ok((text, data)) => RunResult {
            exit_code: 0,
            stdout: if json {
                let obj = json!({ "ok": true, "data": data });
                format!("{obj}\n")
            } else {
                format!("{text}\n")
            },
            stderr: String::new(),
        },
        Err(Failure::Usage(message)) => RunResult {
            exit_code: 2,
            stdout: String::new(),
            stderr: format!("usage error: {message}\n"),
        },
        Err(Failure::Math { message, witness }) => {
            if json {
                let mut obj = json!({ "ok": false, "data": message });
                if let Some(w) = witness {
                    obj["witness"] = w;
                }
                RunResult {
                    exit_code: 1,
                    stdout: format!("{obj}\n"),
                    stderr: String::new(),
                }
            } else {
                let stderr = match witness {
                    Some(w) => format!("failed: {message} (witness {w})\n"),
                    None => format!("failed: {message}\n"),
                };
                RunResult {
                    exit_code: 1,
                    stdout: String::new(),
                    stderr,
                }
            }
        }
    }
}

fn parse_field(text: &str) -> Result<FieldDescriptor, Failure> {
    text.parse().map_err(usage)
}

fn parse_point(text: &str, field: &FieldDescriptor, n: usize) -> Result<ProjPoint, Failure> {
    let p = ProjPoint::parse(text, field).map_err(usage)?;
    if p.dim() != n {
        return Err(Failure::Usage(format!(
            "point {p} lies in P^{}, expected P^{n}",
            p.dim()
        )));
    }
    Ok(p)
}

/// The points a sampling subcommand runs over.
fn sample_points(
    field: &FieldDescriptor,
    n: usize,
    opts: &SampleOpts,
) -> Result<Vec<ProjPoint>, Failure> {
    if opts.exhaustive {
        enumerate_proj(field, n).map_err(usage)
    } else {
        let mut rng = SampleRng::new(opts.seed);
        Ok((0..opts.samples).map(|_| rng.proj_point(field, n)).collect())
    }
}

fn dispatch(command: &Command) -> CmdResult {
    match command {
        Command::SectionsDim { n, d } => sections_dim(*n, *d),
        Command::CocycleCheck { n, e, field, sample } => cocycle(*n, *e, field, sample),
        Command::Enumerate { n, field } => enumerate(*n, field),
        Command::Overlap { n, j, k, point, field } => run_overlap(*n, *j, *k, point, field),
        Command::Veronese { n, d, point, field } => run_veronese(*n, *d, point, field),
        Command::Segre { m, n, point_a, point_b, field } => {
            run_segre(*m, *n, point_a, point_b, field)
        }
        Command::EulerCheck { n, field, sample } => euler(*n, field, sample),
        Command::SectionEval { section, chart, point, field } => {
            section_eval(section, *chart, point, field)
        }
        Command::CertifyDenominator { poly, field, n } => certify(poly, field, *n),
    }
}

fn sections_dim(n: usize, d: u64) -> CmdResult {
    // C(n+d, n) computed exactly
    let mut acc: u128 = 1;
    for i in 0..n as u64 {
        acc = acc
            .checked_mul((n as u64 + d - i) as u128)
            .ok_or_else(|| Failure::Usage("dimension overflows".to_string()))?
            / (i + 1) as u128;
    }
    // cross-check against the actual basis at desk scale
    if n <= 4 && d <= 8 {
        let basis = section_basis(FieldDescriptor::Rationals, n, d as u32).map_err(math)?;
        assert_eq!(basis.len() as u128, acc);
    }
    Ok((acc.to_string(), json!(acc.to_string())))
}

fn cocycle(n: usize, e: i64, field: &str, opts: &SampleOpts) -> CmdResult {
    let field = parse_field(field)?;
    let points = sample_points(&field, n, opts)?;
    let mut checked = 0u64;
    for p in &points {
        for i in 0..=n {
            for j in 0..=n {
                for k in 0..=n {
                    if !(p.in_chart(i) && p.in_chart(j) && p.in_chart(k)) {
                        continue;
                    }
                    let holds = cocycle_check(BundleDegree(e), i, j, k, p).map_err(math)?;
                    checked += 1;
                    if !holds {
                        return Err(Failure::Math {
                            message: format!(
                                "cocycle violated for e={e} at charts ({i},{j},{k})"
                            ),
                            witness: Some(json!({
                                "point": p.to_string(),
                                "charts": [i, j, k],
                            })),
                        });
                    }
                }
            }
        }
    }
    Ok((
        "ok".to_string(),
        json!({ "e": e, "points": points.len(), "checks": checked }),
    ))
}

fn enumerate(n: usize, field: &str) -> CmdResult {
    let field = parse_field(field)?;
    let points = enumerate_proj(&field, n).map_err(usage)?;
    let rendered: Vec<String> = points.iter().map(|p| p.to_string()).collect();
    Ok((rendered.join("\n"), json!(rendered)))
}

fn run_overlap(n: usize, j: usize, k: usize, point: &str, field: &str) -> CmdResult {
    let field = parse_field(field)?;
    if j > n || k > n {
        return Err(Failure::Usage(format!("charts must lie in 0..={n}")));
    }
    let p = parse_point(point, &field, n)?;
    let from = opv::standard_chart_fwd(k, &p).map_err(math)?;
    let to = opv::overlap(j, k, &from).map_err(math)?;
    let rendered: Vec<String> = to.iter().map(|c| c.to_string()).collect();
    Ok((
        format!("({})", rendered.join(", ")),
        json!({ "from_chart": k, "to_chart": j, "coords": rendered }),
    ))
}

fn run_veronese(n: usize, d: u32, point: &str, field: &str) -> CmdResult {
    let field = parse_field(field)?;
    let p = parse_point(point, &field, n)?;
    let image = veronese(d, &p).map_err(math)?;
    Ok((image.to_string(), json!(image.to_string())))
}

fn run_segre(m: usize, n: usize, point_a: &str, point_b: &str, field: &str) -> CmdResult {
    let field = parse_field(field)?;
    let a = parse_point(point_a, &field, m)?;
    let b = parse_point(point_b, &field, n)?;
    let image = segre(&a, &b).map_err(math)?;
    Ok((image.to_string(), json!(image.to_string())))
}

fn euler(n: usize, field: &str, opts: &SampleOpts) -> CmdResult {
    let field = parse_field(field)?;
    let points = sample_points(&field, n, opts)?;
    for p in &points {
        let sequences = [
            ("tautological", opv::taut_sequence_fiber(p), (1, n + 1, n)),
            ("hyperplane", opv::hyperplane_sequence_fiber(p), (n, n + 1, 1)),
            ("Euler", opv::euler_sequence_fiber(p), (1, n + 1, n)),
        ];
        for (name, seq, dims) in sequences {
            if seq.dims() != dims || !seq.is_exact() {
                return Err(Failure::Math {
                    message: format!("{name} sequence fails exactness"),
                    witness: Some(json!({ "point": p.to_string() })),
                });
            }
        }
    }
    Ok((
        "ok".to_string(),
        json!({ "points": points.len(), "sequences": ["tautological", "hyperplane", "Euler"] }),
    ))
}

fn section_eval(section: &str, chart: usize, point: &str, field: &str) -> CmdResult {
    let field = parse_field(field)?;
    let p = ProjPoint::parse(point, &field).map_err(usage)?;
    let s = RationalSection::parse(section, p.coords().len(), &field).map_err(math)?;
    let value = s.local_rep(chart, &p).map_err(math)?;
    let assumed = s.certificate() == NonvanishingCertificate::Assumed;
    let mut data = json!({
        "value": value.to_string(),
        "chart": chart,
        "degree": s.degree().0,
    });
    if assumed {
        data["assumed_denominator"] = json!(true);
    }
    Ok((value.to_string(), data))
}

fn certificate_name(cert: NonvanishingCertificate) -> &'static str {
    match cert {
        NonvanishingCertificate::ExhaustiveFiniteField => "exhaustive-finite-field",
        NonvanishingCertificate::PositiveDiagonalEvenForm => "positive-diagonal-even-form",
        NonvanishingCertificate::Assumed => "assumed",
    }
}

/// Largest variable index mentioned in a polynomial literal, for inferring
/// the ambient dimension.
fn max_variable_index(text: &str) -> Option<usize> {
    let bytes = text.as_bytes();
    let mut best: Option<usize> = None;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' {
            let start = i + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            if end > start {
                if let Ok(idx) = text[start..end].parse::<usize>() {
                    best = Some(best.map_or(idx, |b: usize| b.max(idx)));
                }
            }
            i = end;
        } else {
            i += 1;
        }
    }
    best
}

fn certify(poly: &str, field: &str, n: Option<usize>) -> CmdResult {
    let field = parse_field(field)?;
    let nvars = match n {
        Some(n) => n + 1,
        None => max_variable_index(poly).map_or(1, |i| i + 1),
    };
    let parsed = opv::parse_poly(poly, nvars, &field).map_err(usage)?;
    let homog = match parsed.as_homogeneous() {
        Some(h) => h.clone(),
        None => {
            return Err(Failure::Usage(
                "denominator must be homogeneous and nonzero".to_string(),
            ))
        }
    };
    match certify_nonvanishing(&homog).map_err(math)? {
        CertifyOutcome::Certified(cert) => {
            let name = certificate_name(cert);
            Ok((
                format!("certificate: {name}"),
                json!({ "status": "certified", "certificate": name }),
            ))
        }
        CertifyOutcome::Undecided => Err(Failure::Math {
            message: "undecided: no certificate and no witness".to_string(),
            witness: None,
        }),
        CertifyOutcome::VanishesAt(p) => Err(Failure::Math {
            message: "denominator vanishes".to_string(),
            witness: Some(json!(p.to_string())),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_line(line: &str) -> RunResult {
        let cli = Cli::try_parse_from(line.split_whitespace()).expect("flags parse");
        run(&cli)
    }

    #[test]
    fn sections_dim_matches_binomial() {
        let r = run_line("opv sections-dim --n 2 --d 3");
        assert_eq!(r.exit_code, 0);
        assert_eq!(r.stdout, "10\n");
    }

    #[test]
    fn cocycle_exhaustive_f5() {
        let r = run_line("opv cocycle-check --n 2 --e -3 --field Fp:5 --exhaustive");
        assert_eq!(r.exit_code, 0);
        assert_eq!(r.stdout, "ok\n");
    }

    #[test]
    fn enumerate_p1_f3() {
        let r = run_line("opv enumerate --n 1 --field Fp:3");
        assert_eq!(r.exit_code, 0);
        assert_eq!(r.stdout, "[1:0]\n[1:1]\n[1:2]\n[0:1]\n");
    }

    #[test]
    fn overlap_reciprocal() {
        // chart-1 coords of [2:1] are (2); the chart-0 coordinate is 1/2
        let r = run_line("opv overlap --n 1 --j 0 --k 1 --point [2:1]");
        assert_eq!(r.exit_code, 0);
        assert_eq!(r.stdout, "(1/2)\n");
        let r = run_line("opv overlap --n 1 --j 0 --k 1 --point [1:2]");
        assert_eq!(r.stdout, "(2)\n");
    }

    #[test]
    fn veronese_and_segre() {
        let r = run_line("opv veronese --n 1 --d 2 --point [1:2]");
        assert_eq!(r.stdout, "[1:2:4]\n");
        let r = run_line("opv segre --m 1 --n 1 --pointA [1:2] --pointB [1:3]");
        assert_eq!(r.stdout, "[1:3:2:6]\n");
    }

    #[test]
    fn euler_exhaustive_f3() {
        let r = run_line("opv euler-check --n 2 --field Fp:3 --exhaustive");
        assert_eq!(r.exit_code, 0);
        assert_eq!(r.stdout, "ok\n");
    }

    #[test]
    fn usage_errors_exit_two() {
        let r = run_line("opv enumerate --n 1 --field Q");
        assert_eq!(r.exit_code, 2);
        assert!(r.stderr.contains("usage error"));
        let r = run_line("opv cocycle-check --n 2 --e 1 --field Fp:6 --exhaustive");
        assert_eq!(r.exit_code, 2);
    }

    #[test]
    fn math_failures_exit_one() {
        // point outside the requested overlap
        let r = run_line("opv overlap --n 1 --j 1 --k 0 --point [1:0]");
        assert_eq!(r.exit_code, 1);
        assert!(r.stderr.contains("failed"));
    }

    #[test]
    fn max_variable_index_inference() {
        assert_eq!(max_variable_index("x0^2 + x1^2"), Some(1));
        assert_eq!(max_variable_index("3"), None);
        assert_eq!(max_variable_index("x12*x3"), Some(12));
    }
}
