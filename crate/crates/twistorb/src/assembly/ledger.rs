//! Class ledgers: ingested lists of σ-twisted conjugacy classes with
//! representatives and fixed-set volumes Vol(Γ ∩ Z_σ(γ)\X(γσ)).
//!
//! The artifact never constructs Γ; volumes are inputs with recorded
//! provenance, and torsion-freeness of Γ is a user assertion.
//!
//! File format, one block per entry:
//!   id = <name>
//!   gamma = <row-major matrix>
//!   sigma_power = <int>
//!   volume = <positive real>
//!   elliptic = <true|false>

use crate::error::{Error, Result};
use crate::liecore::{
    parse_group_config, Automorphism, GroupElement, ReductiveAlgebra, TwistedElement,
};
use crate::symspace::{
    semisimple_decompose, twisted_centralizer, CentralizerData, MinimizerOptions, SemisimpleData,
    SpacePoint,
};

/// One ledger entry.
#[derive(Debug, Clone)]
pub struct ClassEntry {
    pub id: String,
    pub gamma: GroupElement,
    pub sigma_power: i64,
    pub volume: f64,
    pub elliptic: bool,
}

/// A parsed and invariant-checked class ledger.
#[derive(Debug, Clone)]
pub struct ClassLedger {
    pub entries: Vec<ClassEntry>,
    pub group: String,
    pub provenance: String,
}

/// A ledger entry together with its normal form and centralizer data.
pub struct DecomposedClass {
    pub entry: ClassEntry,
    pub sd: SemisimpleData,
    pub cz: CentralizerData,
}

/// Parse a ledger from text (the group context supplies the matrix size).
pub fn parse_ledger(alg: &ReductiveAlgebra, text: &str) -> Result<ClassLedger> {
    let mut entries = Vec::new();
    let mut cur: Vec<(String, String, usize)> = Vec::new();
    let mut provenance = String::new();

    let flush = |cur: &mut Vec<(String, String, usize)>, entries: &mut Vec<ClassEntry>| -> Result<()> {
        if cur.is_empty() {
            return Ok(());
        }
        let mut id = None;
        let mut gamma = None;
        let mut sigma_power = 1i64;
        let mut volume = None;
        let mut elliptic = None;
        for (k, v, line) in cur.drain(..) {
            match k.as_str() {
                "id" => id = Some(v),
                "gamma" => {
                    gamma = Some(crate::liecore::parse_matrix_pub(&v, line)?);
                }
                "sigma_power" => {
                    sigma_power = v
                        .parse()
                        .map_err(|_| Error::parse(line, format!("bad sigma_power '{v}'")))?
                }
                "volume" => {
                    volume = Some(
                        v.parse::<f64>()
                            .map_err(|_| Error::parse(line, format!("bad volume '{v}'")))?,
                    )
                }
                "elliptic" => {
                    elliptic = Some(
                        v.parse::<bool>()
                            .map_err(|_| Error::parse(line, format!("bad elliptic flag '{v}'")))?,
                    )
                }
                other => return Err(Error::parse(line, format!("unknown ledger key '{other}'"))),
            }
        }
        let id = id.ok_or_else(|| Error::parse(0, "ledger block missing 'id'"))?;
        let gamma = gamma.ok_or_else(|| Error::parse(0, "ledger block missing 'gamma'"))?;
        let volume = volume.ok_or_else(|| Error::parse(0, "ledger block missing 'volume'"))?;
        let elliptic =
            elliptic.ok_or_else(|| Error::parse(0, "ledger block missing 'elliptic'"))?;
        if volume <= 0.0 {
            return Err(Error::InvalidInput(format!("volume of '{id}' must be positive")));
        }
        entries.push(ClassEntry {
            id,
            gamma: GroupElement::new(gamma, ""),
            sigma_power,
            volume,
            elliptic,
        });
        Ok(())
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let n = lineno + 1;
        if line.starts_with('#') {
            provenance.push_str(line.trim_start_matches('#').trim());
            provenance.push(' ');
            continue;
        }
        if line.is_empty() {
            flush(&mut cur, &mut entries)?;
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(n, "expected key = value"))?;
        cur.push((k.trim().to_string(), v.trim().to_string(), n));
    }
    flush(&mut cur, &mut entries)?;

    // exactly one identity entry when present
    let idents = entries
        .iter()
        .filter(|e| {
            (&e.gamma.matrix
                - crate::numerics::matfun::CMat::identity(alg.rep_dim, alg.rep_dim))
            .norm()
                < 1e-12
        })
        .count();
    if idents > 1 {
        return Err(Error::InvalidInput(
            "ledger has multiple identity entries".into(),
        ));
    }
    for e in entries.iter_mut() {
        e.gamma.group = alg.name.clone();
    }
    Ok(ClassLedger { entries, group: alg.name.clone(), provenance })
}

/// Load a ledger from a file, checking entries against the decomposition.
pub fn load_ledger(
    alg: &ReductiveAlgebra,
    sigma: &Automorphism,
    path: &std::path::Path,
) -> Result<(ClassLedger, Vec<DecomposedClass>)> {
    let text = std::fs::read_to_string(path)?;
    let ledger = parse_ledger(alg, &text)?;
    let decomposed = decompose_ledger(alg, sigma, &ledger)?;
    Ok((ledger, decomposed))
}

/// Decompose every entry and enforce the elliptic-flag consistency.
pub fn decompose_ledger(
    alg: &ReductiveAlgebra,
    sigma: &Automorphism,
    ledger: &ClassLedger,
) -> Result<Vec<DecomposedClass>> {
    let mut out = Vec::new();
    for e in &ledger.entries {
        let te = TwistedElement::new(e.gamma.clone(), e.sigma_power);
        let sd = semisimple_decompose(
            alg,
            sigma,
            &te,
            &SpacePoint::basepoint(alg),
            MinimizerOptions::default(),
        )?;
        if e.elliptic != sd.is_elliptic() {
            return Err(Error::Invariant(format!(
                "entry '{}' flagged elliptic={} but |a| = {:.3e}",
                e.id, e.elliptic, sd.m_gamma_sigma
            )));
        }
        let cz = twisted_centralizer(alg, sigma, &sd)?;
        out.push(DecomposedClass { entry: e.clone(), sd, cz });
    }
    Ok(out)
}

/// Convenience: parse the paired group config and ledger files.
pub fn load_with_group(
    group_cfg: &str,
    ledger_text: &str,
) -> Result<(ReductiveAlgebra, Automorphism, ClassLedger, Vec<DecomposedClass>)> {
    let cfg = parse_group_config(group_cfg)?;
    let ledger = parse_ledger(&cfg.algebra, ledger_text)?;
    let dec = decompose_ledger(&cfg.algebra, &cfg.sigma, &ledger)?;
    Ok((cfg.algebra, cfg.sigma, ledger, dec))
}
