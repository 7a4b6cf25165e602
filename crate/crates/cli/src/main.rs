//! Command-line front end: tropicalizations, Fox matrices, jump ideals,
//! BNSR bounds, finite-generation tests, graph and orbifold catalogs, the
//! built-in regression driver, and SVG figure rendering.

mod examples;
mod inputs;
mod json;
mod svg;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use tropos_core::abelian::{abelianize, Presentation};
use tropos_core::alexander::{
    audit_inclusion, bnsr_upper_bound, dwyer_fried_test, fox_matrix, jump_ideal,
    presentation_complex, ChainData, DEFAULT_MINOR_CAP,
};
use tropos_core::catalog::{
    jump_loci_wraag, kahler_classify, orbifold_report, OrbifoldData, OrbifoldV1,
};
use tropos_core::tropical::{
    sphere_project, trop_hypersurface_field, trop_hypersurface_z, trop_z_decomposition,
    SphericalSet, TropicalRegion, Verdict,
};
use tropos_core::Result;

#[derive(Parser)]
#[command(name = "tropos", about = "Tropical varieties of Laurent ideals and BNSR bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Tropical hypersurface of a polynomial over a valued field.
    Trop {
        poly: String,
        /// Valuation: trivial | padic:p | modp:p.
        #[arg(long, default_value = "trivial")]
        val: String,
        /// Output format: json | svg | text.
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Tropical region over Z with its valuation-family decomposition.
    Tropz {
        poly: String,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Abelianized Fox matrix of a presentation file.
    Fox { pres: PathBuf },
    /// Jump ideal of a presentation or chain-data file.
    Jump {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        /// Minor-count guard (overrides TROPOS_MINOR_CAP).
        #[arg(long)]
        cap: Option<u128>,
    },
    /// BNSR upper bound of a presentation, optionally audited against a fixture.
    Bound {
        pres: PathBuf,
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Finite-generation test from annihilator generators.
    Df {
        polys: Vec<String>,
        /// Ring: z | q | fp:p.
        #[arg(long, default_value = "z")]
        ring: String,
    },
    /// Jump loci and Kähler classification of a weighted graph.
    Raag {
        graph: PathBuf,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long)]
        classify: bool,
    },
    /// Closed forms for an orbifold surface group.
    Orbifold {
        #[arg(long)]
        genus: u64,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        mu: Vec<u64>,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Run the built-in regression pipelines.
    Examples,
    /// Render a tropical region or its sphere as SVG.
    Render {
        poly: String,
        /// Valuation: z | trivial | padic:p | modp:p.
        #[arg(long, default_value = "z")]
        val: String,
        /// Render the sphere projection instead of the region.
        #[arg(long)]
        sphere: bool,
    },
}

fn minor_cap(flag: Option<u128>) -> u128 {
    flag.or_else(|| std::env::var("TROPOS_MINOR_CAP").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(DEFAULT_MINOR_CAP)
}

fn emit(output: &Option<PathBuf>, bytes: &[u8]) -> std::io::Result<()> {
    match output {
        Some(path) => fs::write(path, bytes),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(bytes)
        }
    }
}

fn region_text(r: &TropicalRegion) -> String {
    let mut out = format!(
        "source: {}\nprovenance: {}\ncells: {}\n",
        r.source,
        json::provenance_str(r.provenance),
        r.cells.len()
    );
    for (i, c) in r.cells.iter().enumerate() {
        out.push_str(&format!("cell {i}: {} constraints\n", c.poly.constraints.len()));
    }
    out
}

fn compute_region(poly: &str, val: &str) -> Result<TropicalRegion> {
    let f = inputs::parse_poly(poly)?;
    if val == "z" {
        trop_hypersurface_z(&f)
    } else {
        let v = inputs::valuation_from_selector(val)?;
        trop_hypersurface_field(&f, &v)
    }
}

fn cmd_trop(poly: &str, val: &str, format: &str) -> Result<Vec<u8>> {
    let region = compute_region(poly, val)?;
    match format {
        "svg" => Ok(svg::render_region(&region)?.into_bytes()),
        "text" => Ok(region_text(&region).into_bytes()),
        _ => Ok(json::to_bytes(&json::region_json(&region))),
    }
}

fn cmd_tropz(poly: &str, format: &str) -> Result<Vec<u8>> {
    let f = inputs::parse_poly(poly)?;
    let region = trop_hypersurface_z(&f)?;
    if format == "svg" {
        return Ok(svg::render_region(&region)?.into_bytes());
    }
    let decomposition = trop_z_decomposition(&f)?;
    let sphere_z = sphere_project(&region);
    let mut union = SphericalSet::empty(region.dim);
    for (_, r) in &decomposition {
        union = union.union(&sphere_project(r));
    }
    let identity = sphere_z.eq_sets(&union);
    let value = json!({
        "schema": json::SCHEMA_VERSION,
        "kind": "tropz",
        "region": json::region_json(&region),
        "decomposition": decomposition
            .iter()
            .map(|(name, r)| json!({"valuation": name, "region": json::region_json(r)}))
            .collect::<Vec<_>>(),
        "sphere_z": json::sphere_json(&sphere_z),
        "sphere_union": json::sphere_json(&union),
        "sphere_identity": json::verdict_str(identity),
    });
    if format == "text" {
        let mut out = region_text(&region);
        out.push_str(&format!(
            "sphere identity check: {}\n",
            if identity == Verdict::True { "PASS" } else { "FAIL" }
        ));
        return Ok(out.into_bytes());
    }
    Ok(json::to_bytes(&value))
}

fn cmd_fox(pres: &PathBuf) -> Result<Vec<u8>> {
    let text = fs::read_to_string(pres)
        .map_err(|e| tropos_core::Error::Parse { pos: 0, msg: e.to_string() })?;
    let p = Presentation::parse(&text)?;
    let ab = abelianize(&p);
    let fm = fox_matrix(&p, &ab)?;
    let value = json!({
        "schema": json::SCHEMA_VERSION,
        "kind": "fox",
        "generators": p.generators,
        "abelianization": ab.group.to_string(),
        "matrix": fm.entries
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    });
    Ok(json::to_bytes(&value))
}

fn load_chain(file: &PathBuf) -> Result<ChainData> {
    let text = fs::read_to_string(file)
        .map_err(|e| tropos_core::Error::Parse { pos: 0, msg: e.to_string() })?;
    if text.lines().any(|l| l.trim_start().starts_with("ranks:")) {
        inputs::parse_chain_file(&text)
    } else {
        let p = Presentation::parse(&text)?;
        Ok(presentation_complex(&p)?.0)
    }
}

fn cmd_jump(file: &PathBuf, degree: usize, cap: Option<u128>) -> Result<Vec<u8>> {
    let chain = load_chain(file)?;
    let j = jump_ideal(&chain, degree, minor_cap(cap))?;
    let value = json!({
        "schema": json::SCHEMA_VERSION,
        "kind": "jump_ideal",
        "degree": j.degree,
        "generators": j.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "principal_part": j.principal_part.as_ref().map(|g| g.to_string()),
        "residual": j.residual.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
    });
    Ok(json::to_bytes(&value))
}

fn cmd_bound(pres: &PathBuf, fixture: &Option<PathBuf>) -> Result<Vec<u8>> {
    let text = fs::read_to_string(pres)
        .map_err(|e| tropos_core::Error::Parse { pos: 0, msg: e.to_string() })?;
    let p = Presentation::parse(&text)?;
    let bound = bnsr_upper_bound(&p, minor_cap(None))?;
    let mut value = json!({
        "schema": json::SCHEMA_VERSION,
        "kind": "bnsr_bound",
        "rank": bound.rank,
        "provenance": match bound.provenance {
            tropos_core::tropical::Provenance::Exact => "EXACT",
            tropos_core::tropical::Provenance::UpperBound => "UPPER_BOUND",
        },
        "sphere": json::sphere_json(&bound.sphere),
        "complement": bound.complement.as_ref().map(json::sphere_json),
    });
    if let Some(path) = fixture {
        let ftext = fs::read_to_string(path)
            .map_err(|e| tropos_core::Error::Parse { pos: 0, msg: e.to_string() })?;
        let fix = inputs::parse_fixture_file(&ftext)?;
        let complement = bound.complement.as_ref().ok_or_else(|| {
            tropos_core::Error::Unsupported("complement undecidable at this rank".into())
        })?;
        let report = audit_inclusion(&fix, complement);
        value.as_object_mut().unwrap().insert(
            "audit".into(),
            json!({
                "fixture": fix.id,
                "citation": fix.citation,
                "included": json::verdict_str(report.included),
                "strict": json::verdict_str(report.strict),
            }),
        );
    }
    Ok(json::to_bytes(&value))
}

fn cmd_df(polys: &[String], ring: &str) -> Result<Vec<u8>> {
    let gens = inputs::parse_polys(polys)?;
    let ring_sel = inputs::ring_from_selector(ring)?;
    let verdict = dwyer_fried_test(&gens, &ring_sel)?;
    let value = json!({
        "schema": json::SCHEMA_VERSION,
        "kind": "dwyer_fried",
        "ring": ring,
        "finitely_generated": json::verdict_str(verdict),
    });
    Ok(json::to_bytes(&value))
}

fn cmd_raag(graph: &PathBuf, characteristic: u64, classify: bool) -> Result<Vec<u8>> {
    let text = fs::read_to_string(graph)
        .map_err(|e| tropos_core::Error::Parse { pos: 0, msg: e.to_string() })?;
    let g = inputs::parse_graph_file(&text)?;
    let loci = jump_loci_wraag(&g, characteristic)?;
    let mut value = json!({
        "schema": json::SCHEMA_VERSION,
        "kind": "wraag",
        "characteristic": characteristic,
        "components": loci.components
            .iter()
            .map(|w| w.iter().map(|&i| g.vertices[i].clone()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "full_torus": loci.full_torus,
    });
    if classify {
        let k = kahler_classify(&g);
        value.as_object_mut().unwrap().insert(
            "kahler".into(),
            json!({"kahler": k.kahler, "reason": k.reason}),
        );
    }
    Ok(json::to_bytes(&value))
}

fn cmd_orbifold(genus: u64, mu: &[u64], characteristic: u64) -> Result<Vec<u8>> {
    let d = OrbifoldData::new(genus, mu.to_vec())?;
    let r = orbifold_report(&d, characteristic)?;
    let value = json!({
        "schema": json::SCHEMA_VERSION,
        "kind": "orbifold",
        "euler": json::rational_str(&r.euler),
        "theta": r.theta.to_string(),
        "rank": r.rank,
        "v1": match r.v1 {
            OrbifoldV1::FullTorus => "Hom(H;k*)",
            OrbifoldV1::OffComponentsAndOne => "Hom(H;k*)' + {1}",
            OrbifoldV1::One => "{1}",
        },
        "trop": if r.trop_full { format!("R^{}", r.rank) } else { "{0}".to_string() },
        "sigma1": if r.sigma1_full { "S^1" } else { "empty" },
    });
    Ok(json::to_bytes(&value))
}

fn cmd_examples() -> (Vec<u8>, bool) {
    let checks = examples::run_all();
    let mut out = String::new();
    let mut all_pass = true;
    for c in &checks {
        all_pass &= c.pass;
        out.push_str(&format!(
            "{} {} ({})\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.label,
            c.detail
        ));
    }
    out.push_str(&format!(
        "{}/{} checks passed\n",
        checks.iter().filter(|c| c.pass).count(),
        checks.len()
    ));
    (out.into_bytes(), all_pass)
}

fn cmd_render(poly: &str, val: &str, sphere: bool) -> Result<Vec<u8>> {
    let region = compute_region(poly, val)?;
    if sphere {
        Ok(svg::render_sphere(&sphere_project(&region))?.into_bytes())
    } else {
        Ok(svg::render_region(&region)?.into_bytes())
    }
}

fn run(cli: &Cli) -> Result<(Vec<u8>, bool)> {
    let bytes = match &cli.command {
        Command::Trop { poly, val, format } => cmd_trop(poly, val, format)?,
        Command::Tropz { poly, format } => cmd_tropz(poly, format)?,
        Command::Fox { pres } => cmd_fox(pres)?,
        Command::Jump { file, degree, cap } => cmd_jump(file, *degree, *cap)?,
        Command::Bound { pres, fixture } => cmd_bound(pres, fixture)?,
        Command::Df { polys, ring } => cmd_df(polys, ring)?,
        Command::Raag { graph, characteristic, classify } => {
            cmd_raag(graph, *characteristic, *classify)?
        }
        Command::Orbifold { genus, mu, characteristic } => {
            cmd_orbifold(*genus, mu, *characteristic)?
        }
        Command::Examples => {
            let (bytes, ok) = cmd_examples();
            return Ok((bytes, ok));
        }
        Command::Render { poly, val, sphere } => cmd_render(poly, val, *sphere)?,
    };
    Ok((bytes, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((bytes, ok)) => {
            if emit(&cli.output, &bytes).is_err() {
                eprintln!("error: failed to write output");
                return ExitCode::FAILURE;
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
