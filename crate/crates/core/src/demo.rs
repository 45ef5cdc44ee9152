//! The (9,6) equiangular tight frame, built end to end from the 8-vertex
//! directed strongly regular graph.

use crate::data;
use crate::error::{Error, Result};
use crate::frames::{self, BoundReport, EtfReport, FrameSystem, GramMatrix};
use crate::orbits::{self, CanonicalKey};
use crate::seidel::{Digraph, SeidelMatrix};
use crate::spectra::{self, SpectralCertificate};

#[derive(Clone, Debug)]
pub struct Etf96Report {
    pub digraph: Digraph,
    pub seidel: SeidelMatrix,
    pub cone: SeidelMatrix,
    pub canonical_key: CanonicalKey,
    /// The cone is switching equivalent to the tabulated 9×9 matrix.
    pub matches_reference: bool,
    pub certificate: SpectralCertificate,
    pub gram: GramMatrix,
    pub frame: FrameSystem,
    pub reconstruction_residual: f64,
    pub etf: EtfReport,
    pub bounds: BoundReport,
}

fn stage<T>(stage: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Stage { stage, message: e.to_string() })
}

/// Digraph → cube-root Seidel matrix → cone → certificate → Gram matrix →
/// frame vectors → ETF check.
pub fn demo_etf96() -> Result<Etf96Report> {
    let digraph = data::dsrg8();
    let seidel = SeidelMatrix::from_digraph(&digraph);
    let cone = seidel.cone();
    let canonical_key = stage("canonical-form", orbits::canonical_form(&cone))?;
    let reference = stage("canonical-form", orbits::canonical_form(&data::etf96_matrix()))?;
    let matches_reference = canonical_key == reference;
    if !matches_reference {
        return Err(Error::Stage { stage: "canonical-form", message: "cone differs from the reference matrix".into() });
    }
    let certificate = match stage("certificate", spectra::two_eigenvalue_certificate(&cone))? {
        spectra::Certification::Regular(c) => c,
        spectra::Certification::Refused { witness } => {
            return Err(Error::Stage {
                stage: "certificate",
                message: format!("refused at ({}, {})", witness.0 + 1, witness.1 + 1),
            })
        }
    };
    let gram = stage("gram", frames::gram_from_seidel(&cone))?;
    let frame = stage("frame-vectors", frames::frame_vectors(&gram))?;
    let reconstruction_residual = frames::reconstruction_residual(&frame, &gram);
    let etf = frames::verify_etf(&frame, frames::DEFAULT_ETF_TOL);
    let bounds = stage("bounds", frames::bound_report(frame.len(), frame.k, gram.coherence))?;
    Ok(Etf96Report {
        digraph,
        seidel,
        cone,
        canonical_key,
        matches_reference,
        certificate,
        gram,
        frame,
        reconstruction_residual,
        etf,
        bounds,
    })
}
