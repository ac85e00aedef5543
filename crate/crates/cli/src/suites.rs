//! Verification claims. Each claim runs on its own engine seeded from the
//! cache, so results do not depend on scheduling.

use std::time::Instant;

use knotcert::braid::{family, parse_braid, Family};
use knotcert::dehornoy::floor_exceeds_one;
use knotcert::homfly::{Budget, Engine};
use knotcert::montesinos::{ell_family, ell0_data, ell_inf_data, is_lspace, is_lspace_m1, surgery_slopes, Rational};
use knotcert::positivity::{
    genus_cross_check, genus_kn, ito_obstruction, sharpness, skein_decomposition_check, verify_topterm,
    PositivityError,
};
use knotcert::traintrack::{
    is_efficient_up_to, is_irreducible, kn_map, kn_structural_checks, pf_eigenvalue, primitive_exponent, transition,
    CheckedMap, EdgeSelector, GraphMap, TraintrackError,
};
use knotcert::BraidWord;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cache::{Cache, Key};
use crate::report::{Entry, Status};
use knotcert::LaurentPoly2;

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub budget: Budget,
    pub pf_tolerance: f64,
    /// Defaults to twice the number of edges.
    pub backtrack_bound: Option<usize>,
    pub handle_budget: u64,
}

impl Settings {
    pub fn to_json(&self) -> Value {
        json!({
            "backtrack_bound": self.backtrack_bound,
            "handle_budget": self.handle_budget,
            "max_letters": self.budget.max_letters,
            "max_strands": self.budget.max_strands,
            "p0_nodes": self.budget.p0_nodes,
            "pf_tolerance": self.pf_tolerance,
        })
    }
}

type Run = Box<dyn Fn(&mut Engine, &Settings) -> (Status, Value) + Send + Sync>;

pub struct Claim {
    pub id: String,
    pub anchor: String,
    run: Run,
}

impl Claim {
    fn new(id: String, anchor: &str, run: impl Fn(&mut Engine, &Settings) -> (Status, Value) + Send + Sync + 'static) -> Self {
        Claim {
            id,
            anchor: anchor.into(),
            run: Box::new(run),
        }
    }
}

/// Runs claims on a pool of `threads` workers; returns entries and the
/// HOMFLY polynomials computed along the way.
pub fn run_claims(claims: Vec<Claim>, settings: &Settings, cache: &Cache, threads: usize) -> (Vec<Entry>, Vec<(Key, LaurentPoly2)>) {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool");
    let results: Vec<(Entry, Vec<(Key, LaurentPoly2)>)> = pool.install(|| {
        claims
            .into_par_iter()
            .map(|c| {
                let mut engine = Engine::new(settings.budget);
                cache.seed(&mut engine);
                let start = Instant::now();
                let (status, values) = (c.run)(&mut engine, settings);
                let wall_ms = start.elapsed().as_secs_f64() * 1e3;
                let fresh = cache.fresh(&engine);
                let entry = Entry {
                    claim: c.id,
                    anchor: c.anchor,
                    status,
                    values,
                    wall_ms,
                };
                (entry, fresh)
            })
            .collect()
    });
    let mut entries = Vec::with_capacity(results.len());
    let mut fresh = Vec::new();
    for (e, f) in results {
        entries.push(e);
        fresh.extend(f);
    }
    (entries, fresh)
}

fn positivity_failure(e: PositivityError) -> (Status, Value) {
    let status = if e.is_budget() { Status::Skipped } else { Status::Fail };
    (status, json!({ "error": e.to_string() }))
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn term(t: &(i32, num_bigint::BigInt)) -> Value {
    json!({ "coefficient": t.1.to_string(), "exponent": t.0 })
}

pub fn topterm(ns: impl IntoIterator<Item = usize>) -> Vec<Claim> {
    ns.into_iter()
        .map(|n| {
            Claim::new(format!("topterm/n={n:02}"), "top term of p0(K_n) is (-1)^n v^(3n^2+3n)", move |e, _| {
                match verify_topterm(e, n) {
                    Ok(c) => (
                        verdict(c.pass),
                        json!({ "computed": term(&c.computed), "expected": term(&c.expected), "n": n }),
                    ),
                    Err(err) => positivity_failure(err),
                }
            })
        })
        .collect()
}

pub fn decomposition(ns: impl IntoIterator<Item = usize>) -> Vec<Claim> {
    ns.into_iter()
        .map(|n| {
            Claim::new(
                format!("decomposition/n={n:02}"),
                "p0(K_n) equals the crossing-change expansion over cables and K_n+",
                move |e, _| match skein_decomposition_check(e, n) {
                    Ok(c) => (
                        verdict(c.pass),
                        json!({ "n": n, "p0": c.p0_kn.to_string(), "rhs": c.rhs.to_string() }),
                    ),
                    Err(err) => positivity_failure(err),
                },
            )
        })
        .collect()
}

pub fn sharpness_suite(n_max: usize) -> Vec<Claim> {
    let mut cases: Vec<(String, BraidWord, bool)> = vec![
        ("sharpness/control-hopf".into(), parse_braid("1 1", None).expect("literal"), true),
        ("sharpness/control-trefoil".into(), parse_braid("1 1 1", None).expect("literal"), true),
    ];
    for k in 2..=n_max {
        cases.push((format!("sharpness/cable-k={k:02}"), family(Family::Cable, k).expect("k >= 1"), false));
    }
    for n in 3..=n_max {
        cases.push((format!("sharpness/kn-plus-n={n:02}"), family(Family::KnPlus, n).expect("n >= 2"), false));
    }
    cases
        .into_iter()
        .map(|(id, word, expect)| {
            let anchor = if expect {
                "positive braid is sharp: deg p0 = strands + crossings - components"
            } else {
                "positive braid is not sharp: deg p0 < strands + crossings - components"
            };
            Claim::new(id, anchor, move |e, _| match sharpness(e, &word) {
                Ok(r) => (
                    verdict(r.sharp == expect),
                    json!({ "bound": r.bound, "p0_degree": r.p0_degree, "sharp": r.sharp }),
                ),
                Err(err) => positivity_failure(err),
            })
        })
        .collect()
}

pub fn ito(ns: impl IntoIterator<Item = usize>) -> Vec<Claim> {
    let mut claims = vec![Claim::new(
        "ito/control-t25".into(),
        "tilde polynomial of a positive torus knot is positive",
        |e, _| match ito_obstruction(e, &parse_braid("1 1 1 1 1", None).expect("literal"), 2) {
            Ok(v) => (verdict(v.positive), json!({ "tilde": v.tilde_poly.to_string() })),
            Err(err) => positivity_failure(err),
        },
    )];
    for n in ns {
        claims.push(Claim::new(
            format!("ito/n={n:02}"),
            "tilde polynomial of K_n has a negative coefficient (not braid positive)",
            move |e, _| {
                let g = match genus_kn(n) {
                    Ok(g) => g,
                    Err(err) => return (Status::Skipped, json!({ "error": err.to_string() })),
                };
                match ito_obstruction(e, &family(Family::Kn, n).expect("n >= 1"), g) {
                    Ok(v) => {
                        // a positive tilde polynomial does not decide braid positivity
                        let status = if v.positive { Status::Unknown } else { Status::Pass };
                        let z0 = v.z0_part();
                        let top = z0.top_term().ok();
                        (
                            status,
                            json!({
                                "genus": g,
                                "genus_agrees_with_alexander": v.genus_check.agrees,
                                "witness": v.witness.map(|(a, z, c)| json!([a, z, c.to_string()])),
                                "z0_top": top.as_ref().map(term),
                            }),
                        )
                    }
                    Err(err) => positivity_failure(err),
                }
            },
        ));
    }
    claims
}

pub fn genus(ns: impl IntoIterator<Item = usize>) -> Vec<Claim> {
    ns.into_iter()
        .map(|n| {
            Claim::new(
                format!("genus/n={n:02}"),
                "Alexander span of K_n equals twice (3n^2 - n + 2)/2",
                move |e, _| {
                    let g = match genus_kn(n) {
                        Ok(g) => g,
                        Err(err) => return (Status::Skipped, json!({ "error": err.to_string() })),
                    };
                    match genus_cross_check(e, &family(Family::Kn, n).expect("n >= 1"), g) {
                        Ok(c) => (
                            verdict(c.agrees),
                            json!({ "alexander_half_span": c.alexander_half_span, "genus": g }),
                        ),
                        Err(err) => positivity_failure(err),
                    }
                },
            )
        })
        .collect()
}

pub fn lspace(k_max: i64) -> Vec<Claim> {
    let mut claims = Vec::new();
    for k in 1..=k_max {
        for (name, which) in [("ell0", 0), ("ellinf", 1)] {
            claims.push(Claim::new(
                format!("lspace/{name}/k={k:04}"),
                "double branched cover satisfies the L-space criterion",
                move |_, _| {
                    let data = if which == 0 { ell0_data(k) } else { ell_inf_data(k) };
                    match is_lspace(&data) {
                        Ok(Some(v)) => (
                            verdict(v.is_lspace),
                            json!({
                                "data": data.normalize().to_string(),
                                "m_max": v.m_max,
                                "witness": v.witness,
                            }),
                        ),
                        Ok(None) => (Status::Fail, json!({ "error": "data is not of the form M(-1; r1, r2, r3)" })),
                        Err(err) => (Status::Fail, json!({ "error": err.to_string() })),
                    }
                },
            ));
        }
    }
    claims.push(Claim::new(
        "lspace/negative-control".into(),
        "M(-1; 1/2, 1/3, 1/7) is obstructed",
        |_, _| {
            let q = Rational::new;
            match is_lspace_m1(q(1, 2), q(1, 3), q(1, 7)) {
                Ok(v) => (verdict(!v.is_lspace), json!({ "witness": v.witness })),
                Err(err) => (Status::Fail, json!({ "error": err.to_string() })),
            }
        },
    ));
    claims
}

pub fn slopes(k_max: i64) -> Vec<Claim> {
    (1..=k_max)
        .map(|k| {
            Claim::new(
                format!("slopes/k={k:04}"),
                "determinants and surgery slope of K_2k agree: 8k^2 + (4k^2 + 2k) = 12k^2 + 2k",
                move |_, _| match (ell_family(k), surgery_slopes(k)) {
                    (Ok(f), Ok(s)) => (
                        verdict(f.recursion_holds && f.endpoints_match && s.consistent),
                        json!({ "det_ell": f.det_ell, "det_ell0": f.det_ell0, "slope": s.lspace_slope }),
                    ),
                    (Err(err), _) | (_, Err(err)) => (Status::Fail, json!({ "error": err.to_string() })),
                },
            )
        })
        .collect()
}

fn certify_map(m: &CheckedMap, s: &Settings, extra: Option<(usize, bool)>) -> (Status, Value) {
    let t = match transition(m, &EdgeSelector::Real) {
        Ok(t) => t,
        Err(err) => return (Status::Fail, json!({ "error": err.to_string() })),
    };
    let irreducible = is_irreducible(&t);
    let pf = pf_eigenvalue(&t, s.pf_tolerance);
    let bound = s.backtrack_bound.unwrap_or(2 * m.real_edges().len().max(1));
    let backtrack = is_efficient_up_to(m, bound);
    let lambda_ok = matches!(&pf, Ok(p) if p.lower > 1.0 + 1e-6);
    let mut values = json!({
        "backtrack": backtrack.as_ref().map(|b| json!({ "edge": b.edge, "m": b.m, "position": b.position, "turn": [b.turn.0, b.turn.1] })),
        "efficient_up_to": if backtrack.is_none() { Some(bound) } else { None },
        "irreducible": irreducible,
        "lambda": pf.as_ref().ok().map(|p| json!({ "lower": p.lower, "upper": p.upper, "value": p.value })),
        "primitive_exponent": primitive_exponent(&t),
        "real_edges": m.real_edges().len(),
        "warnings": m.diagnostics().warnings.len(),
    });
    if let Err(err) = &pf {
        values["lambda_error"] = json!(err.to_string());
    }
    let mut ok = irreducible && lambda_ok && backtrack.is_none();
    if let Some((n, structural)) = extra {
        values["n"] = json!(n);
        values["structural"] = json!(structural);
        ok &= structural;
    }
    (verdict(ok), values)
}

pub fn traintrack(ns: impl IntoIterator<Item = usize>) -> Vec<Claim> {
    ns.into_iter()
        .map(|n| {
            Claim::new(
                format!("traintrack/n={n:02}"),
                "graph map of K_n is efficient with irreducible real transition matrix and lambda > 1",
                move |_, s| match kn_map(n) {
                    Ok(m) => certify_map(&m, s, Some((n, kn_structural_checks(&m, n).hold()))),
                    Err(err) => (Status::Fail, json!({ "error": err.to_string() })),
                },
            )
        })
        .collect()
}

pub fn traintrack_user(map: GraphMap) -> Claim {
    Claim::new(
        "traintrack/user-map".into(),
        "supplied graph map is efficient with irreducible real transition matrix and lambda > 1",
        move |_, s| match CheckedMap::new(map.clone()) {
            Ok(m) => certify_map(&m, s, None),
            Err(TraintrackError::Invalid(d)) => (Status::Fail, json!({ "errors": format!("{:?}", d.errors) })),
            Err(err) => (Status::Fail, json!({ "error": err.to_string() })),
        },
    )
}

pub fn dehornoy(ns: impl IntoIterator<Item = usize>) -> Vec<Claim> {
    ns.into_iter()
        .map(|n| {
            Claim::new(
                format!("dehornoy/n={n:02}"),
                "Delta^-4 X_n beta_n X_n^-1 is sigma1-positive",
                move |_, s| match floor_exceeds_one(n, s.handle_budget) {
                    Ok(c) => (
                        verdict(c.holds && c.class.main_index == Some(1)),
                        json!({
                            "input_length": c.input_len,
                            "reduced_length": c.class.reduced_word.len(),
                            "steps": c.class.steps,
                            "verdict": c.class.verdict.name(),
                        }),
                    ),
                    Err(knotcert::dehornoy::DehornoyError::Budget { steps, length }) => (
                        Status::Skipped,
                        json!({ "error": "handle budget exhausted", "length": length, "steps": steps }),
                    ),
                    Err(err) => (Status::Fail, json!({ "error": err.to_string() })),
                },
            )
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    /// Sub-minute checks.
    Desk,
    /// Adds the K_4 stretch jobs.
    Full,
}

pub fn all(level: Level) -> Vec<Claim> {
    let full = level == Level::Full;
    let top = if full { 4 } else { 3 };
    let even = if full { vec![2, 4] } else { vec![2] };
    let mut c = Vec::new();
    c.extend(topterm(2..=top));
    c.extend(decomposition(2..=top));
    c.extend(sharpness_suite(top));
    c.extend(ito(even.clone()));
    c.extend(genus(even));
    c.extend(lspace(500));
    c.extend(slopes(500));
    c.extend(traintrack(3..=8));
    c.extend(dehornoy(2..=if full { 6 } else { 5 }));
    c
}
