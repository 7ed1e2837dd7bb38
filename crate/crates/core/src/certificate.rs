//! Self-checking certificates. A certificate stores its inputs, a hash of
//! them, the claims made about them and supporting witness data; `verify`
//! recomputes every claim from the inputs.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::cycles::{enumerate_cycles, is_two_connected, list_cycles};
use crate::ear::{build_family, check_few_cycles, check_structure, ear_decompose, CheckReport, FeasibilityIndex};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::refined_edge_bound;
use crate::search::exact_f;

pub const TOOL_VERSION: &str = concat!("cyclelens ", env!("CARGO_PKG_VERSION"));

/// Largest order for which the refined edge ceiling is enforced.
pub const EDGE_BOUND_MAX_N: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    DistinctSpectrum,
    PropositionSuite,
    SearchOptimal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub input_hash: String,
    pub inputs: Value,
    pub claims: Value,
    pub witness: Value,
    pub tool_version: String,
}

/// Outcome of replaying a certificate.
#[derive(Debug, Clone, Serialize)]
pub struct Verification {
    pub hash_ok: bool,
    pub mismatches: Vec<String>,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.hash_ok && self.mismatches.is_empty()
    }
}

/// SHA-256 of the compact JSON form; object keys are always sorted.
pub fn hash_value(v: &Value) -> String {
    hex::encode(Sha256::digest(v.to_string().as_bytes()))
}

fn seal(kind: CertificateKind, inputs: Value, claims: Value, witness: Value) -> Certificate {
    Certificate {
        kind,
        input_hash: hash_value(&inputs),
        inputs,
        claims,
        witness,
        tool_version: TOOL_VERSION.to_string(),
    }
}

fn graph_input(v: &Value) -> Result<Graph> {
    Ok(serde_json::from_value(v.get("graph").cloned().unwrap_or(Value::Null))?)
}

fn u64_input(v: &Value, key: &str) -> Result<u64> {
    v.get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::InvalidInput(format!("certificate input `{key}` missing")))
}

fn spectrum_claims(g: &Graph, cap: u64) -> Result<(Value, Value)> {
    let cycles = list_cycles(g, cap)?;
    let mut by_len: Vec<Vec<usize>> = cycles;
    by_len.sort_by_key(|c| c.len());
    if let Some(w) = by_len.windows(2).find(|w| w[0].len() == w[1].len()) {
        return Err(Error::InvalidInput(format!(
            "two cycles of length {}: {:?} and {:?}",
            w[0].len(),
            w[0],
            w[1]
        )));
    }
    let n = g.n();
    let bound = refined_edge_bound(n);
    let claims = json!({
        "n": n,
        "edges": g.edge_count(),
        "cycle_count": by_len.len(),
        "lengths": by_len.iter().map(Vec::len).collect::<Vec<_>>(),
        "two_connected": is_two_connected(g),
        "edge_bound": bound,
        "within_edge_bound": n > EDGE_BOUND_MAX_N || g.edge_count() as f64 <= bound,
    });
    Ok((claims, json!({ "cycles": by_len })))
}

/// Certifies that no two cycles of `g` have the same length, listing one
/// cycle per length.
pub fn distinct_spectrum_certificate(g: &Graph, cap: u64) -> Result<Certificate> {
    let inputs = json!({ "graph": g, "cap": cap });
    let (claims, witness) = spectrum_claims(g, cap)?;
    Ok(seal(CertificateKind::DistinctSpectrum, inputs, claims, witness))
}

fn suite_claims(g: &Graph, root: (usize, usize), budget: u64, cap: u64) -> Result<Value> {
    let fam = build_family(ear_decompose(g, root)?);
    let mut report: CheckReport = check_structure(&fam);
    let spectrum = enumerate_cycles(g, cap)?;
    let few = spectrum.cycle_count + 2 <= g.n() as u64;
    if few {
        let idx = FeasibilityIndex::build(&fam, budget)?;
        report.checks.extend(check_few_cycles(&fam, &idx).checks);
    }
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "checked": c.checked, "failed": c.failed }))
        .collect();
    Ok(json!({
        "family_size": fam.len(),
        "few_cycles": few,
        "passed": report.passed(),
        "checks": checks,
    }))
}

/// Runs the structural suite on the family of `g` rooted at `root`, and the
/// counting suite when `g` has at most `n − 2` cycles.
pub fn proposition_suite_certificate(g: &Graph, root: (usize, usize), budget: u64, cap: u64) -> Result<Certificate> {
    let inputs = json!({ "graph": g, "root": [root.0, root.1], "budget": budget, "cap": cap });
    let claims = suite_claims(g, root, budget, cap)?;
    Ok(seal(CertificateKind::PropositionSuite, inputs, claims, Value::Null))
}

fn search_claims(n: usize, two: bool, budget: u64) -> Result<(Value, Value)> {
    let r = exact_f(n, two, budget)?;
    let claims = json!({
        "best_edge_count": r.best_edge_count,
        "excess": r.excess,
        "proven_optimal": r.proven_optimal,
        "nodes_explored": r.nodes_explored,
    });
    Ok((claims, json!({ "graph": r.witness, "spectrum": r.spectrum })))
}

pub fn search_certificate(n: usize, two_connected: bool, budget: u64) -> Result<Certificate> {
    let inputs = json!({ "n": n, "two_connected": two_connected, "budget": budget });
    let (claims, witness) = search_claims(n, two_connected, budget)?;
    Ok(seal(CertificateKind::SearchOptimal, inputs, claims, witness))
}

fn compare(out: &mut Vec<String>, what: &str, stored: &Value, fresh: &Value) {
    if stored != fresh {
        out.push(format!("{what}: certificate says {stored}, recomputed {fresh}"));
    }
}

/// Replays a certificate. A changed input is caught by the hash; changed
/// claims or witnesses show up as mismatches.
pub fn verify(cert: &Certificate) -> Result<Verification> {
    let hash_ok = hash_value(&cert.inputs) == cert.input_hash;
    let mut mismatches = Vec::new();
    if !hash_ok {
        mismatches.push("input hash does not match the inputs".to_string());
        return Ok(Verification { hash_ok, mismatches });
    }
    let inp = &cert.inputs;
    match cert.kind {
        CertificateKind::DistinctSpectrum => {
            let g = graph_input(inp)?;
            match spectrum_claims(&g, u64_input(inp, "cap")?) {
                Ok((claims, witness)) => {
                    compare(&mut mismatches, "claims", &cert.claims, &claims);
                    compare(&mut mismatches, "witness", &cert.witness, &witness);
                }
                Err(e) => mismatches.push(format!("spectrum no longer distinct: {e}")),
            }
        }
        CertificateKind::PropositionSuite => {
            let g = graph_input(inp)?;
            let root = inp
                .get("root")
                .and_then(|r| serde_json::from_value::<(usize, usize)>(r.clone()).ok())
                .ok_or_else(|| Error::InvalidInput("certificate input `root` missing".into()))?;
            let claims = suite_claims(&g, root, u64_input(inp, "budget")?, u64_input(inp, "cap")?)?;
            compare(&mut mismatches, "claims", &cert.claims, &claims);
        }
        CertificateKind::SearchOptimal => {
            let n = u64_input(inp, "n")? as usize;
            let two = inp.get("two_connected").and_then(Value::as_bool).unwrap_or(false);
            let (claims, witness) = search_claims(n, two, u64_input(inp, "budget")?)?;
            compare(&mut mismatches, "claims", &cert.claims, &claims);
            compare(&mut mismatches, "witness", &cert.witness, &witness);
        }
    }
    Ok(Verification { hash_ok, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::bcfy_construct;
    use crate::cycles::DEFAULT_CAP;

    #[test]
    fn spectrum_certificate_round_trip() {
        let g = bcfy_construct(3).unwrap();
        let cert = distinct_spectrum_certificate(g.graph(), DEFAULT_CAP).unwrap();
        assert_eq!(cert.claims["cycle_count"], 6);
        assert_eq!(cert.claims["within_edge_bound"], true);
        let text = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        assert!(verify(&back).unwrap().ok());
    }

    #[test]
    fn tampering_is_caught() {
        let g = bcfy_construct(2).unwrap();
        let cert = distinct_spectrum_certificate(g.graph(), DEFAULT_CAP).unwrap();

        let mut bad = cert.clone();
        bad.inputs["graph"]["edges"][0] = json!([0, 5]);
        let v = verify(&bad).unwrap();
        assert!(!v.hash_ok && !v.ok());

        let mut bad = cert.clone();
        bad.claims["cycle_count"] = json!(4);
        assert!(!verify(&bad).unwrap().ok());

        let mut bad = cert;
        bad.witness["cycles"][0] = json!([0, 1, 2]);
        assert!(!verify(&bad).unwrap().ok());
    }

    #[test]
    fn repeating_graph_is_refused() {
        assert!(distinct_spectrum_certificate(&Graph::complete(4), DEFAULT_CAP).is_err());
    }

    #[test]
    fn suite_and_search_certificates_verify() {
        let g = bcfy_construct(3).unwrap();
        let cert = proposition_suite_certificate(g.graph(), (0, 1), u64::MAX, DEFAULT_CAP).unwrap();
        assert_eq!(cert.claims["passed"], true);
        assert!(verify(&cert).unwrap().ok());
        let cert = search_certificate(6, true, u64::MAX).unwrap();
        assert_eq!(cert.claims["excess"], 1);
        assert!(verify(&cert).unwrap().ok());
    }
}
