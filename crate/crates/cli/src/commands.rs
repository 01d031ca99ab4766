use std::collections::BTreeMap;
use std::path::Path;

use arithpoints_core::covers::{
    branched_cover, compose_with_isogeny, predicted_profile, riemann_hurwitz, transported_basis,
    CoverData, MarkedTorusCover,
};
use arithpoints_core::exactmath::parse_cycles;
use arithpoints_core::homology::{
    absolute_homology_basis, build_chain_complex, Edge, period_vector, relative_homology_basis,
};
use arithpoints_core::orbits::{canonical_form, orbit};
use arithpoints_core::origami::{enumerate_origamis, singularity_profile};
use arithpoints_core::satake::{all_queries, dim_one_classification, orbit_dim, Family, Rep, RootSystemQuery};
use arithpoints_core::strata::{
    cm_reduced_degree, enumerate_strata, isoperiodic_codim, period_rank, solve_rank_degree, CmFactorData,
};
use arithpoints_core::superelliptic::{
    divisor_of_differential, divisor_of_function, search_torsion_witness, stratum_of_form,
    verify_torsion_witness, Place, SuperellipticCurve,
};
use arithpoints_core::{Error, GaussianRational, Origami, Permutation, Stratum};
use clap::Subcommand;
use num_traits::Zero;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::{CmdResult, Failure};

#[derive(Subcommand, Debug)]
pub enum OrigamiCmd {
    /// Genus, stratum, vertices and homology ranks.
    Info { origami: String },
    /// Relative homology basis and its exact periods.
    Periods { origami: String },
    /// The SL(2,Z)-orbit of canonical representatives.
    Orbit { origami: String },
    /// All connected origamis with a given number of squares, up to relabeling.
    Enumerate {
        #[arg(long)]
        squares: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum CoverCmd {
    /// Composes an origami (or a marked torus cover in JSON) with multiplication by N.
    Isogeny {
        #[arg(long = "n")]
        n: usize,
        origami: String,
    },
    /// Builds a branched cover from JSON crossing or vertex-monodromy data.
    Branched { origami: String, spec: String },
}

#[derive(Subcommand, Debug)]
pub enum StrataCmd {
    /// Strata of a given genus with their dimensions.
    List {
        #[arg(long)]
        genus: u64,
    },
    /// Scans the rank-degree equation.
    SolveRank {
        #[arg(long)]
        dmax: u64,
        #[arg(long)]
        kmax: u64,
        #[arg(long)]
        umax: u64,
    },
    /// Reduced degree of an endomorphism algebra from JSON factor data.
    Cm { data: String },
}

#[derive(Subcommand, Debug)]
pub enum SatakeCmd {
    /// Orbit dimension for one representation.
    Dims {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        rep: Rep,
    },
    /// Orbit dimensions up to a rank, and the representations with one-dimensional orbit.
    Classify {
        #[arg(long)]
        nmax: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum CurveCmd {
    /// Genus and places at infinity.
    Genus { curve: String },
    /// Divisor of a function, or of `expr·dx` with `--differential`.
    Divisor {
        curve: String,
        expr: String,
        #[arg(long)]
        differential: bool,
        /// Places that must be examined, e.g. `(0, i)`.
        #[arg(long = "hint")]
        hints: Vec<String>,
    },
    /// Stratum of the holomorphic form `expr·dx`.
    Stratum { curve: String, expr: String },
    /// Checks `div(witness) = k·P − k·Q`, or searches for a witness.
    Torsion {
        curve: String,
        witness: Option<String>,
        #[arg(long)]
        p: String,
        #[arg(long, default_value = "inf_0")]
        q: String,
        #[arg(long)]
        k: Option<u64>,
        /// Search bound when no witness is given.
        #[arg(long, default_value_t = 12)]
        kmax: u64,
    },
}

/// Reads `arg` as a file when such a file exists, else uses it inline.
fn load(arg: &str) -> Result<String, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Failure::Validation(format!("cannot read {arg}: {e}")))
    } else {
        Ok(arg.trim().to_string())
    }
}

fn load_origami(arg: &str) -> Result<Origami, Failure> {
    let o: Origami = load(arg)?.parse()?;
    if !o.is_connected() {
        return Err(Error::InvalidOrigami(format!("{o} is disconnected")).into());
    }
    Ok(o)
}

fn json_input<T: for<'de> Deserialize<'de>>(arg: &str) -> Result<T, Failure> {
    serde_json::from_str(&load(arg)?).map_err(|e| Failure::Validation(format!("bad JSON: {e}")))
}

/// `b3` for the bottom edge of square 3, `l3` for its left edge (1-based).
fn edge_name(e: usize, squares: usize) -> String {
    match Edge::from_index(e, squares) {
        Edge::Bottom(s) => format!("b{}", s + 1),
        Edge::Left(s) => format!("l{}", s + 1),
    }
}

fn stratum_json(s: &Stratum) -> Value {
    json!(s.to_string())
}

pub fn origami(cmd: OrigamiCmd) -> CmdResult {
    match cmd {
        OrigamiCmd::Info { origami } => {
            let o = load_origami(&origami)?;
            let s = singularity_profile(&o)?;
            let cx = build_chain_complex(&o)?;
            let rel = relative_homology_basis(&o)?;
            let abs = absolute_homology_basis(&o)?;
            let vertices: Vec<Value> = (0..cx.vertex_count())
                .map(|w| json!({"vertex": w, "cone_angle": cx.cone_angle[w], "zero_order": cx.cone_angle[w] - 1}))
                .collect();
            Ok(json!({
                "origami": o.to_string(),
                "canonical": canonical_form(&o)?.origami().to_string(),
                "squares": o.squares(),
                "genus": s.genus(),
                "stratum": stratum_json(&s),
                "rank": rel.rank,
                "absolute_rank": abs.rank,
                "euler_characteristic": cx.euler_characteristic(),
                "vertices": vertices,
            }))
        }
        OrigamiCmd::Periods { origami } => {
            let o = load_origami(&origami)?;
            let basis = relative_homology_basis(&o)?;
            let periods = period_vector(&o, &basis)?;
            let rows: Vec<Value> = basis
                .cycles
                .iter()
                .zip(&periods.entries)
                .enumerate()
                .map(|(i, (c, z))| {
                    let chain: Vec<String> = c
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(e, x)| format!("{x:+}*{}", edge_name(e, o.squares())))
                        .collect();
                    json!({"cycle": i, "period": z.to_string(), "chain": chain.join(" ")})
                })
                .collect();
            Ok(json!({
                "origami": o.to_string(),
                "rank": basis.rank,
                "marked_vertices": basis.marked,
                "lattice_index": periods.lattice_index().map(|i| i.to_string()),
                "cycles": rows,
            }))
        }
        OrigamiCmd::Orbit { origami } => {
            let o = load_origami(&origami)?;
            let r = orbit(&o)?;
            Ok(json!({
                "size": r.size,
                "stratum": stratum_json(&r.stratum),
                "representatives": r.representatives.iter().map(|c| c.origami().to_string()).collect::<Vec<_>>(),
            }))
        }
        OrigamiCmd::Enumerate { squares } => {
            let all = enumerate_origamis(squares)?;
            let rows = all
                .iter()
                .map(|o| {
                    let s = singularity_profile(o)?;
                    Ok(json!({"origami": o.to_string(), "genus": s.genus(), "stratum": stratum_json(&s)}))
                })
                .collect::<Result<Vec<Value>, Error>>()?;
            Ok(json!({"squares": squares, "count": rows.len(), "origamis": rows}))
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BranchSpec {
    degree: usize,
    /// Vertex index → monodromy in cycle notation.
    #[serde(default)]
    monodromy: BTreeMap<usize, String>,
    #[serde(default)]
    horizontal: Option<Vec<String>>,
    #[serde(default)]
    vertical: Option<Vec<String>>,
}

fn cover_data(o: &Origami, spec: &BranchSpec) -> Result<CoverData, Failure> {
    let perms = |v: &[String]| -> Result<Vec<Permutation>, Error> {
        v.iter().map(|s| parse_cycles(spec.degree, s)).collect()
    };
    match (&spec.horizontal, &spec.vertical) {
        (Some(h), Some(v)) if spec.monodromy.is_empty() => Ok(CoverData {
            degree: spec.degree,
            horizontal: perms(h)?,
            vertical: perms(v)?,
        }),
        (None, None) => {
            let mut m = BTreeMap::new();
            for (w, s) in &spec.monodromy {
                m.insert(*w, parse_cycles(spec.degree, s)?);
            }
            Ok(CoverData::from_vertex_monodromy(o, spec.degree, &m)?)
        }
        _ => Err(Failure::Validation(
            "give either `monodromy` or both `horizontal` and `vertical`".into(),
        )),
    }
}

pub fn cover(cmd: CoverCmd) -> CmdResult {
    match cmd {
        CoverCmd::Isogeny { n, origami } => {
            let text = load(&origami)?;
            let (cover, base) = if text.starts_with('{') {
                let c: MarkedTorusCover = serde_json::from_str(&text)
                    .map_err(|e| Failure::Validation(format!("bad cover JSON: {e}")))?;
                (c, None)
            } else {
                let o = load_origami(&text)?;
                (MarkedTorusCover::from_origami(&o)?, Some(o))
            };
            let big = compose_with_isogeny(&cover, n)?;
            let s = singularity_profile(&big)?;
            let mut out = json!({
                "n": n,
                "cover": serde_json::to_value(&cover).expect("serializable"),
                "origami": big.to_string(),
                "squares": big.squares(),
                "genus": s.genus(),
                "stratum": stratum_json(&s),
            });
            if let Some(o) = base {
                let rel = relative_homology_basis(&o)?;
                let before = period_vector(&o, &rel)?;
                let after = period_vector(&big, &transported_basis(&o, n, &rel)?)?;
                let scaled = after == before.scaled(&GaussianRational::from(n as i64));
                out["periods_scaled_by_n"] = json!(scaled);
                out["stratum_preserved"] = json!(singularity_profile(&o)? == s);
            }
            Ok(out)
        }
        CoverCmd::Branched { origami, spec } => {
            let o = load_origami(&origami)?;
            let spec: BranchSpec = json_input(&spec)?;
            let data = cover_data(&o, &spec)?;
            let cover = branched_cover(&o, &data)?;
            let s = singularity_profile(&cover)?;
            let predicted = predicted_profile(&o, &data)?;
            let (lhs, rhs) = riemann_hurwitz(&o, &data)?;
            Ok(json!({
                "origami": cover.to_string(),
                "squares": cover.squares(),
                "genus": s.genus(),
                "stratum": stratum_json(&s),
                "predicted_stratum": stratum_json(&predicted),
                "riemann_hurwitz": {"lhs": lhs, "rhs": rhs, "holds": lhs == rhs},
            }))
        }
    }
}

pub fn strata(cmd: StrataCmd) -> CmdResult {
    match cmd {
        StrataCmd::List { genus } => {
            let rows = enumerate_strata(genus)?
                .into_iter()
                .map(|e| {
                    let iso = isoperiodic_codim(&e.stratum)?;
                    Ok(json!({
                        "stratum": stratum_json(&e.stratum),
                        "dim": e.dim,
                        "period_rank": period_rank(&e.stratum),
                        "rel_rank": iso.rel_rank,
                        "leaf_dim": iso.leaf_dim,
                    }))
                })
                .collect::<Result<Vec<Value>, Error>>()?;
            Ok(json!({"genus": genus, "count": rows.len(), "strata": rows}))
        }
        StrataCmd::SolveRank { dmax, kmax, umax } => {
            let rows = solve_rank_degree(dmax, kmax, umax)?;
            Ok(json!({
                "bounds": {"dmax": dmax, "kmax": kmax, "umax": umax},
                "count": rows.len(),
                "solutions": rows,
            }))
        }
        StrataCmd::Cm { data } => {
            let d: CmFactorData = json_input(&data)?;
            let (degree, cm) = cm_reduced_degree(&d)?;
            Ok(json!({"dim": d.dim, "reduced_degree": degree, "target": 2 * d.dim, "complex_multiplication": cm}))
        }
    }
}

fn query_row(q: &RootSystemQuery) -> Result<Value, Error> {
    Ok(json!({
        "family": q.family.to_string(),
        "rank": q.rank,
        "rep": q.rep.to_string(),
        "rep_dim": q.rep_dim().to_string(),
        "orbit_dim": orbit_dim(q)?,
    }))
}

pub fn satake(cmd: SatakeCmd) -> CmdResult {
    match cmd {
        SatakeCmd::Dims { family, rank, rep } => Ok(query_row(&RootSystemQuery::new(family, rank, rep)?)?),
        SatakeCmd::Classify { nmax } => {
            let dim_one = dim_one_classification(nmax)?;
            let rows = all_queries(nmax).iter().map(query_row).collect::<Result<Vec<_>, _>>()?;
            Ok(json!({
                "nmax": nmax,
                "dim_one": dim_one.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "queries": rows,
            }))
        }
    }
}

pub(crate) fn load_curve(arg: &str, ceiling: Option<usize>) -> Result<SuperellipticCurve, Failure> {
    let c: SuperellipticCurve = load(arg)?.parse()?;
    Ok(match ceiling {
        Some(n) => c.with_precision_ceiling(n),
        None => c,
    })
}

fn curve_header(c: &SuperellipticCurve) -> Value {
    json!({"curve": c.to_string(), "genus": c.genus()})
}

pub fn curve(cmd: CurveCmd, ceiling: Option<usize>) -> CmdResult {
    match cmd {
        CurveCmd::Genus { curve } => {
            let c = load_curve(&curve, ceiling)?;
            Ok(json!({
                "curve": c.to_string(),
                "m": c.m(),
                "degree": c.deg_f(),
                "genus": c.genus(),
                "places_at_infinity": c.d_inf(),
                "canonical_degree": c.canonical_degree(),
            }))
        }
        CurveCmd::Divisor { curve, expr, differential, hints } => {
            let c = load_curve(&curve, ceiling)?;
            let u = c.function(&load(&expr)?)?;
            let d = if differential {
                divisor_of_differential(&c, &u)?
            } else {
                let hints = hints.iter().map(|h| h.parse()).collect::<Result<Vec<Place>, Error>>()?;
                divisor_of_function(&c, &u, &hints)?
            };
            let mut out = curve_header(&c);
            out["expr"] = json!(u.to_string());
            out["kind"] = json!(if differential { "differential" } else { "function" });
            out["divisor"] = serde_json::to_value(&d).expect("serializable");
            Ok(out)
        }
        CurveCmd::Stratum { curve, expr } => {
            let c = load_curve(&curve, ceiling)?;
            let u = c.function(&load(&expr)?)?;
            let s = stratum_of_form(&c, &u)?;
            let mut out = curve_header(&c);
            out["form"] = json!(format!("({u}) dx"));
            out["stratum"] = stratum_json(&s);
            Ok(out)
        }
        CurveCmd::Torsion { curve, witness, p, q, k, kmax } => {
            let c = load_curve(&curve, ceiling)?;
            let (p, q): (Place, Place) = (p.parse()?, q.parse()?);
            let mut out = curve_header(&c);
            out["p"] = json!(p.to_string());
            out["q"] = json!(q.to_string());
            match witness {
                Some(w) => {
                    let k = k.ok_or_else(|| Failure::Validation("--k is required with a witness".into()))?;
                    let w = c.function(&load(&w)?)?;
                    out["k"] = json!(k);
                    out["witness"] = json!(w.to_string());
                    out["verified"] = json!(verify_torsion_witness(&c, &p, &q, k, &w)?);
                }
                None => match search_torsion_witness(&c, &p, &q, kmax)? {
                    Some((k, w)) => {
                        out["k"] = json!(k);
                        out["witness"] = json!(w.to_string());
                        out["verified"] = json!(verify_torsion_witness(&c, &p, &q, k, &w)?);
                    }
                    None => {
                        out["k"] = Value::Null;
                        out["witness"] = Value::Null;
                        out["verified"] = json!(false);
                    }
                },
            }
            Ok(out)
        }
    }
}
