//! Command-line front end. Exit codes: 0 success, 1 domain error
//! (validation failure, inapplicable formula, ...), 2 usage error.

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::curves::{self, Mobius};
use crate::fan::Fan;
use crate::homology;
use crate::io::{self, Input};
use crate::lattice::IntVector;
use crate::morse;
use crate::polytope::Polytope;
use crate::quantum::{self, QHClass, QuantumRing};

#[derive(Parser)]
#[command(
    name = "toric",
    about = "Invariants of toric symplectic manifolds and their real Lagrangians",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GeomArgs {
    /// builtin geometry: cp:n, cp1xcp1, or blowup-cp2
    #[arg(long)]
    builtin: Option<String>,
    /// polytope or fan JSON file
    #[arg(long)]
    file: Option<String>,
    /// machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a polytope (Delzant) or fan (fan axioms, completeness)
    Check(GeomArgs),
    /// Fan combinatorics: primitive collections, Chern number, Fano
    Fan(GeomArgs),
    /// Z2 homology ring: Betti numbers and intersection products
    Homology(GeomArgs),
    /// Morse theory of the moment map for a chosen xi
    Morse {
        #[command(flatten)]
        geom: GeomArgs,
        /// integer covector, e.g. --xi 1,2
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        xi: Vec<i64>,
    },
    /// Maslov index of a real disc lift
    Maslov {
        #[command(flatten)]
        geom: GeomArgs,
        /// disc JSON file
        #[arg(long)]
        disc: String,
        /// reparametrize by (az+b)/(cz+d) first, e.g. --mobius 1,0,1,-1
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mobius: Option<Vec<f64>>,
    },
    /// Quantum homology of the ambient space
    Quantum {
        #[command(flatten)]
        geom: GeomArgs,
        /// classes to multiply, e.g. --product D1,D1,D1 (also pt, X)
        #[arg(long, value_delimiter = ',')]
        product: Option<Vec<String>>,
    },
    /// Quantum homology of the real Lagrangian
    Real {
        #[command(flatten)]
        geom: GeomArgs,
        #[arg(long, value_delimiter = ',')]
        product: Option<Vec<String>>,
        /// xi for the wideness summary (auto-chosen when omitted)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        xi: Option<Vec<i64>>,
    },
    /// Summary of every invariant of a geometry
    Info(GeomArgs),
}

struct Failure {
    message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap uses exit code 2 for usage errors, 0 for --help/--version
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Check(geom) => cmd_check(&geom),
        Command::Fan(geom) => cmd_fan(&geom),
        Command::Homology(geom) => cmd_homology(&geom),
        Command::Morse { geom, xi } => cmd_morse(&geom, &xi),
        Command::Maslov { geom, disc, mobius } => cmd_maslov(&geom, &disc, mobius.as_deref()),
        Command::Quantum { geom, product } => cmd_quantum(&geom, product.as_deref()),
        Command::Real { geom, product, xi } => {
            cmd_real(&geom, product.as_deref(), xi.as_deref())
        }
        Command::Info(geom) => cmd_info(&geom),
    };
    match outcome {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message);
            1
        }
    }
}

fn load(geom: &GeomArgs) -> Result<Input, Failure> {
    Ok(io::parse_input(
        geom.builtin.as_deref(),
        geom.file.as_deref(),
    )?)
}

fn emit(json_mode: bool, value: Value, text: &str) {
    if json_mode {
        let mut payload = value;
        payload["schema"] = json!(1);
        println!("{payload}");
    } else {
        println!("{text}");
    }
}

fn cmd_check(geom: &GeomArgs) -> CmdResult {
    let input = load(geom)?;
    let fan_report = input.fan.validate();
    let complete = input.fan.is_complete().unwrap_or(false);
    let mut lines = Vec::new();
    let mut ok = fan_report.valid && complete;
    lines.push(format!(
        "fan: {} ({} rays, {} maximal cones)",
        if fan_report.valid { "valid" } else { "INVALID" },
        input.fan.num_rays(),
        input.fan.max_cones.len()
    ));
    for failure in &fan_report.failures {
        lines.push(format!("  certificate: {failure}"));
    }
    lines.push(format!("complete: {complete}"));
    let mut delzant_json = json!(null);
    if let Some(p) = &input.polytope {
        let report = p.delzant_check()?;
        ok = ok && report.delzant;
        lines.push(format!(
            "polytope: lattice = {}, Delzant = {}",
            report.lattice, report.delzant
        ));
        for c in &report.certificates {
            lines.push(format!("  certificate: {c}"));
        }
        delzant_json = json!({
            "lattice": report.lattice,
            "delzant": report.delzant,
            "certificates": report.certificates,
        });
    }
    emit(
        geom.json,
        json!({
            "fan_valid": fan_report.valid,
            "fan_failures": fan_report.failures,
            "complete": complete,
            "delzant": delzant_json,
        }),
        &lines.join("\n"),
    );
    if ok {
        Ok(())
    } else {
        Err(Failure {
            message: "validation failed (see certificates above)".into(),
        })
    }
}

fn cmd_fan(geom: &GeomArgs) -> CmdResult {
    let input = load(geom)?;
    let fan = &input.fan;
    let collections = fan.primitive_collections()?;
    let chern = fan.minimal_chern()?;
    let fano = fan.is_fano()?;
    let mut lines = vec![format!(
        "fan with {} rays in dimension {}",
        fan.num_rays(),
        fan.dim
    )];
    for (i, ray) in fan.rays.iter().enumerate() {
        lines.push(format!("  ray {}: {:?}", i + 1, ray.vector.0));
    }
    lines.push(format!(
        "primitive collections: {}",
        collections
            .iter()
            .map(|c| format!("{{{}}}", c.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")))
            .collect::<Vec<_>>()
            .join(" ")
    ));
    lines.push(format!("minimal Chern number C_X = {chern}"));
    lines.push(format!("Fano: {fano}"));
    emit(
        geom.json,
        json!({
            "fan": io::fan_to_json(fan),
            "primitive_collections": collections
                .iter()
                .map(|c| c.iter().collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "minimal_chern": chern.to_i64(),
            "fano": fano,
        }),
        &lines.join("\n"),
    );
    Ok(())
}

fn cmd_homology(geom: &GeomArgs) -> CmdResult {
    let input = load(geom)?;
    let (presentation, basis) = homology::homology_ring(&input.fan)?;
    let n = basis.classical_dim();
    let ranks: Vec<usize> = (0..=2 * n).map(|k| basis.rank_homological(k)).collect();
    let mut lines = vec![format!(
        "H_*(X; Z2): total rank {} over degrees 0..{}",
        basis.total_rank,
        2 * n
    )];
    lines.push(format!("ranks by homological degree: {ranks:?}"));
    lines.push(format!(
        "presentation: {} divisor generators, {} linear relations, {} Stanley-Reisner generators",
        presentation.num_generators,
        presentation.linear_relations.len(),
        presentation.sr_generators.len()
    ));
    emit(
        geom.json,
        json!({
            "total_rank": basis.total_rank,
            "ranks": ranks,
            "generators": presentation.num_generators,
            "sr_generators": presentation
                .sr_generators
                .iter()
                .map(|c| c.iter().collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }),
        &lines.join("\n"),
    );
    Ok(())
}

fn polytope_of(input: &Input) -> Result<Polytope, Failure> {
    input.polytope.clone().ok_or(Failure {
        message: "this command needs a polytope; pass a polytope file or a builtin".into(),
    })
}

fn cmd_morse(geom: &GeomArgs, xi: &[i64]) -> CmdResult {
    let input = load(geom)?;
    let polytope = polytope_of(&input)?;
    let xi = if xi.is_empty() {
        morse::suggest_xi(&polytope)?
    } else {
        IntVector::from_i64(xi)
    };
    let profile = morse::morse_profile(&polytope, &xi)?;
    let bound = morse::displacement_bound(&polytope)?;
    let (_, basis) = homology::homology_ring(&input.fan)?;
    let mismatches = morse::compare_with_homology(&profile, &basis)?;
    let mut lines = vec![format!("xi = {:?}", xi.0)];
    for datum in &profile.data {
        lines.push(format!(
            "  vertex {:?}: index_R = {}, index_X = {}",
            datum.vertex.point.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            datum.index_r,
            datum.index_x
        ));
    }
    lines.push(format!(
        "betti_R = {}",
        profile
            .betti_r
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(",")
    ));
    lines.push(format!("displacement bound: {bound}"));
    lines.push(if mismatches.is_empty() {
        "degree-doubling comparison with H_*(X): pass".to_string()
    } else {
        format!("degree-doubling comparison FAILED: {mismatches:?}")
    });
    emit(
        geom.json,
        json!({
            "xi": xi.0.iter().map(|c| c.to_i64()).collect::<Vec<_>>(),
            "betti_r": profile.betti_r,
            "betti_x": profile.betti_x,
            "indices_r": profile.data.iter().map(|d| d.index_r).collect::<Vec<_>>(),
            "displacement_bound": bound,
            "comparison_mismatches": mismatches,
        }),
        &lines.join("\n"),
    );
    Ok(())
}

fn cmd_maslov(geom: &GeomArgs, disc: &str, mobius: Option<&[f64]>) -> CmdResult {
    let (disc_input, mut lift) = io::load_disc(disc)?;
    let fan: Fan = if geom.builtin.is_some() || geom.file.is_some() {
        load(geom)?.fan
    } else {
        disc_input.fan
    };
    curves::validate_lift(&fan, &lift)?;
    let mut lines = Vec::new();
    if let Some(params) = mobius {
        if params.len() != 4 {
            return Err(Failure {
                message: "--mobius needs four values a,b,c,d".into(),
            });
        }
        let phi = Mobius::new(params[0], params[1], params[2], params[3])?;
        lift = curves::reparametrize(&fan, &lift, &phi)?;
        lines.push(format!(
            "reparametrized by z -> ({}z + {})/({}z + {})",
            params[0], params[1], params[2], params[3]
        ));
    }
    let i0 = lift.i0();
    let stratum = curves::infinity_stratum(&fan, &lift)?;
    lines.push(format!(
        "I_0 = {{{}}}",
        i0.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
    ));
    lines.push(format!(
        "divisors met at infinity: {{{}}}",
        stratum.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
    ));
    let result = curves::maslov_general(&fan, &lift, None)?;
    let lambda = curves::curve_class(&fan, &lift)?;
    let c1 = homology::chern_pairing(&fan, &lambda)?;
    lines.push(format!("curve class of the double: {:?}", lambda.0));
    lines.push(format!("c1 of the double: {c1}"));
    lines.push(format!("mu = {}", result.mu));
    emit(
        geom.json,
        json!({
            "i0": i0.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "infinity_stratum": stratum.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "curve_class": lambda.0.iter().map(|c| c.to_i64()).collect::<Vec<_>>(),
            "c1": c1.to_i64(),
            "mu": result.mu.to_i64(),
        }),
        &lines.join("\n"),
    );
    Ok(())
}

/// `D<k>` (1-indexed divisor), `pt`, or `X`/`R`.
fn parse_class(ring: &QuantumRing, name: &str, fan: &Fan) -> Result<QHClass, Failure> {
    let trimmed = name.trim();
    if trimmed.eq_ignore_ascii_case("pt") {
        return Ok(ring.point());
    }
    if trimmed.eq_ignore_ascii_case("x") || trimmed.eq_ignore_ascii_case("r") {
        return Ok(ring.unit());
    }
    if let Some(k) = trimmed.strip_prefix('D').and_then(|s| s.parse::<usize>().ok()) {
        if k >= 1 && k <= fan.num_rays() {
            return Ok(ring.divisor(k - 1));
        }
    }
    Err(Failure {
        message: format!("unknown class {name:?}; use D1..D{}, pt, X", fan.num_rays()),
    })
}

/// Renders a reduced class as a sum of basis terms with the Laurent
/// variable `var` (q upstairs, t downstairs).
fn render_class(ring: &QuantumRing, class: &QHClass, var: char, top: &str) -> String {
    if class.is_zero() {
        return "0".to_string();
    }
    let terms = ring
        .decompose(class)
        .expect("reduced classes decompose over the basis");
    let n = ring.basis.classical_dim();
    let mut parts = Vec::new();
    for (level, _, q_power) in terms {
        let base = if level == 0 {
            format!("[{top}]")
        } else if level == n {
            "[pt]".to_string()
        } else {
            // monomial over the surviving divisor generators
            let m = &ring.basis.monomials[level][ringless_index(ring, class, level)];
            monomial_name(ring, m)
        };
        let part = match q_power {
            0 => base,
            1 => format!("{base}·{var}"),
            k => format!("{base}·{var}^{k}"),
        };
        parts.push(part);
    }
    parts.join(" + ")
}

// index of the basis monomial actually present at this level
fn ringless_index(ring: &QuantumRing, class: &QHClass, level: usize) -> usize {
    ring.decompose(class)
        .unwrap()
        .into_iter()
        .find(|(l, _, _)| *l == level)
        .map(|(_, i, _)| i)
        .unwrap()
}

fn monomial_name(ring: &QuantumRing, m: &crate::gf2::Mono) -> String {
    let mut factors = Vec::new();
    for (pos, &e) in m.0.iter().enumerate() {
        if e > 0 {
            let divisor = ring.basis.kept[pos] + 1;
            factors.push(if e == 1 {
                format!("D{divisor}")
            } else {
                format!("D{divisor}^{e}")
            });
        }
    }
    factors.join("·")
}

fn fold_product(
    ring: &QuantumRing,
    fan: &Fan,
    names: &[String],
) -> Result<QHClass, Failure> {
    let mut acc = ring.unit();
    for name in names {
        let class = parse_class(ring, name, fan)?;
        acc = ring.product(&acc, &class)?;
    }
    Ok(acc)
}

fn relations_lines(ring: &QuantumRing, var: char) -> Vec<String> {
    ring.relations
        .iter()
        .map(|rel| {
            let lhs = rel
                .collection
                .iter()
                .map(|i| format!("x{}", i + 1))
                .collect::<Vec<_>>()
                .join("·");
            let mut rhs = if rel.q_power == num_bigint::BigInt::from(1) {
                var.to_string()
            } else {
                format!("{var}^{}", rel.q_power)
            };
            for (j, c) in &rel.rhs_exponents {
                rhs.push_str(&if *c == num_bigint::BigInt::from(1) {
                    format!("·x{}", j + 1)
                } else {
                    format!("·x{}^{}", j + 1, c)
                });
            }
            format!("  {lhs} = {rhs}")
        })
        .collect()
}

fn cmd_quantum(geom: &GeomArgs, product: Option<&[String]>) -> CmdResult {
    let input = load(geom)?;
    let ring = QuantumRing::new(&input.fan)?;
    let mut lines = vec![format!(
        "QH(X; Lambda) with |q| = -{}, total rank {} over Lambda",
        2 * ring.c_x,
        ring.basis.total_rank
    )];
    lines.push("quantum Stanley-Reisner relations:".to_string());
    lines.extend(relations_lines(&ring, 'q'));
    let mut product_json = json!(null);
    if let Some(names) = product {
        let result = fold_product(&ring, &input.fan, names)?;
        let rendered = render_class(&ring, &result, 'q', "X");
        lines.push(format!("{} = {rendered}", names.join(" * ")));
        product_json = json!({
            "factors": names,
            "result": rendered,
        });
    }
    emit(
        geom.json,
        json!({
            "chern": ring.c_x,
            "total_rank": ring.basis.total_rank,
            "relations": relations_lines(&ring, 'q'),
            "product": product_json,
        }),
        &lines.join("\n"),
    );
    Ok(())
}

fn cmd_real(geom: &GeomArgs, product: Option<&[String]>, xi: Option<&[i64]>) -> CmdResult {
    let input = load(geom)?;
    let real = quantum::qh_real(&input.fan)?;
    let mut lines = vec![format!(
        "QH(R; Lambda_R) with N_R = {}, |t| = -{}",
        real.n_r, real.n_r
    )];
    lines.push("relations (degrees halved, t for q):".to_string());
    lines.extend(relations_lines(&real.ambient, 't'));
    let mut product_json = json!(null);
    if let Some(names) = product {
        let result = fold_product(&real.ambient, &input.fan, names)?;
        let rendered = render_class(&real.ambient, &result, 't', "R");
        lines.push(format!(
            "{} = {rendered}   (real degree {})",
            names.join(" * "),
            real.real_codegree(&result)
        ));
        product_json = json!({"factors": names, "result": rendered});
    }
    let mut wideness_json = json!(null);
    if let Some(polytope) = &input.polytope {
        let xi = match xi {
            Some(v) => IntVector::from_i64(v),
            None => morse::suggest_xi(polytope)?,
        };
        let report = quantum::wideness_summary(&input.fan, polytope, &xi)?;
        lines.push(format!(
            "wide: betti_R = {:?}, QH ranks mod N_R = {:?}, displacement bound {}",
            report.betti_r, report.qh_ranks_mod_n_r, report.displacement_bound
        ));
        wideness_json = json!({
            "betti_r": report.betti_r,
            "qh_ranks_mod_n_r": report.qh_ranks_mod_n_r,
            "displacement_bound": report.displacement_bound,
        });
    }
    emit(
        geom.json,
        json!({
            "n_r": real.n_r,
            "relations": relations_lines(&real.ambient, 't'),
            "product": product_json,
            "wideness": wideness_json,
        }),
        &lines.join("\n"),
    );
    Ok(())
}

fn cmd_info(geom: &GeomArgs) -> CmdResult {
    let input = load(geom)?;
    let fan = &input.fan;
    let report = fan.validate();
    let mut lines = vec![format!(
        "{}: dimension {}, {} rays, {} maximal cones",
        input.name,
        fan.dim,
        fan.num_rays(),
        fan.max_cones.len()
    )];
    let mut payload = json!({
        "name": input.name,
        "fan": io::fan_to_json(fan),
        "valid": report.valid,
    });
    if report.valid && fan.is_complete()? {
        let chern = fan.minimal_chern()?;
        let fano = fan.is_fano()?;
        let (_, basis) = homology::homology_ring(fan)?;
        let ranks: Vec<usize> = (0..=basis.classical_dim())
            .map(|d| basis.rank_codegree(2 * d))
            .collect();
        lines.push(format!("C_X = {chern}, Fano: {fano}"));
        lines.push(format!("Z2 Betti numbers (even degrees): {ranks:?}"));
        payload["minimal_chern"] = json!(chern.to_i64());
        payload["fano"] = json!(fano);
        payload["betti"] = json!(ranks);
        if let Some(p) = &input.polytope {
            let vertices = p.vertices()?.len();
            lines.push(format!(
                "polytope: {} facets, {} vertices",
                p.num_facets(),
                vertices
            ));
            payload["polytope"] = io::polytope_to_json(p);
            payload["vertices"] = json!(vertices);
        }
    } else {
        lines.push("fan is invalid or incomplete; run `toric check`".to_string());
    }
    emit(geom.json, payload, &lines.join("\n"));
    Ok(())
}
