//! Certificate reports as canonical JSON.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use super::canonical::to_canonical_json;
use super::IoError;
use crate::certify::{AposterioriCertificate, AposterioriOracle, AprioriCertificate, AprioriOracle, FailureReason};
use crate::linalg::{CMatrix, HermitianMatrix, OrthonormalFrame};

pub const SCHEMA_VERSION: &str = "1.0";

/// Sizes of the operands and a SHA-256 over their entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub n: usize,
    pub k: usize,
    pub sha256: String,
}

/// Hash of the dimensions and the little-endian bytes of every entry of `A`
/// then `Q₁`, both row-major. Independent of how the input files were laid out.
pub fn input_digest(a: &HermitianMatrix, q1: &OrthonormalFrame) -> InputDigest {
    let mut hasher = Sha256::new();
    let mut feed = |m: &CMatrix| {
        hasher.update((m.rows() as u64).to_le_bytes());
        hasher.update((m.cols() as u64).to_le_bytes());
        for z in m.as_slice() {
            hasher.update(z.re.to_le_bytes());
            hasher.update(z.im.to_le_bytes());
        }
    };
    feed(a.as_matrix());
    feed(q1.as_matrix());
    InputDigest {
        n: a.n(),
        k: q1.k(),
        sha256: hex::encode(hasher.finalize()),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    Apriori(AprioriCertificate),
    Aposteriori(AposterioriCertificate),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Apriori(_) => "apriori",
            Self::Aposteriori(_) => "aposteriori",
        }
    }

    pub fn valid(&self) -> bool {
        match self {
            Self::Apriori(c) => c.valid,
            Self::Aposteriori(c) => c.valid,
        }
    }

    pub fn failure_reason(&self) -> Option<FailureReason> {
        match self {
            Self::Apriori(c) => c.failure_reason,
            Self::Aposteriori(c) => c.failure_reason,
        }
    }

    pub fn tan_bound(&self) -> Option<f64> {
        match self {
            Self::Apriori(c) => c.tan_bound,
            Self::Aposteriori(c) => c.tan_bound,
        }
    }
}

/// Exact-eigendecomposition results attached to a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSection {
    pub eigenvalues: Vec<f64>,
    pub largest_angle: Option<f64>,
    pub exact_tan: Option<f64>,
    /// Whether the exact angle respects the bound; absent for invalid
    /// certificates and when the exact subspace has the wrong rank.
    pub bound_holds: Option<bool>,
    /// A priori only: the enclosure and exterior eigenvalue counts are as claimed.
    pub enclosure_verdict: Option<bool>,
}

impl OracleSection {
    pub fn from_apriori(oracle: &AprioriOracle, cert: &AprioriCertificate) -> Self {
        Self {
            eigenvalues: oracle.eigenvalues.clone(),
            largest_angle: oracle.largest_angle,
            exact_tan: oracle.exact_tan,
            bound_holds: oracle.bound_holds(cert).filter(|_| cert.valid),
            enclosure_verdict: Some(oracle.enclosure_verdict),
        }
    }

    pub fn from_aposteriori(oracle: &AposterioriOracle, cert: &AposterioriCertificate) -> Self {
        Self {
            eigenvalues: oracle.eigenvalues.clone(),
            largest_angle: oracle.largest_angle,
            exact_tan: oracle.exact_tan,
            bound_holds: oracle.bound_holds(cert).filter(|_| cert.valid),
            enclosure_verdict: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificateReport {
    pub schema_version: String,
    pub input: InputDigest,
    pub certificate: Certificate,
    pub oracle: Option<OracleSection>,
}

impl CertificateReport {
    pub fn new(input: InputDigest, certificate: Certificate, oracle: Option<OracleSection>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            input,
            certificate,
            oracle,
        }
    }

    pub fn kind(&self) -> &'static str {
        self.certificate.kind()
    }

    /// `{schema_version, kind, input, certificate, oracle?}`.
    pub fn to_value(&self) -> Value {
        let certificate = match &self.certificate {
            Certificate::Apriori(c) => serde_json::to_value(c),
            Certificate::Aposteriori(c) => serde_json::to_value(c),
        }
        .expect("certificate serializes");
        let mut map = Map::new();
        map.insert("schema_version".into(), Value::String(self.schema_version.clone()));
        map.insert("kind".into(), Value::String(self.kind().into()));
        map.insert("input".into(), serde_json::to_value(&self.input).expect("digest serializes"));
        map.insert("certificate".into(), certificate);
        if let Some(oracle) = &self.oracle {
            map.insert("oracle".into(), serde_json::to_value(oracle).expect("oracle serializes"));
        }
        Value::Object(map)
    }

    pub fn from_value(value: Value) -> Result<Self, IoError> {
        let Value::Object(mut map) = value else {
            return Err(IoError::Schema("report must be a JSON object".into()));
        };
        let mut take = |key: &str| map.remove(key).ok_or_else(|| IoError::Schema(format!("missing `{key}`")));
        let schema_version: String = serde_json::from_value(take("schema_version")?)?;
        let kind: String = serde_json::from_value(take("kind")?)?;
        let input: InputDigest = serde_json::from_value(take("input")?)?;
        let body = take("certificate")?;
        let certificate = match kind.as_str() {
            "apriori" => Certificate::Apriori(serde_json::from_value(body)?),
            "aposteriori" => Certificate::Aposteriori(serde_json::from_value(body)?),
            other => return Err(IoError::Schema(format!("unknown kind `{other}`"))),
        };
        let oracle = match map.remove("oracle") {
            Some(v) => Some(serde_json::from_value(v)?),
            None => None,
        };
        if let Some(extra) = map.keys().next() {
            return Err(IoError::Schema(format!("unexpected field `{extra}`")));
        }
        Ok(Self {
            schema_version,
            input,
            certificate,
            oracle,
        })
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(&self.to_value())
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        Self::from_value(serde_json::from_str(text)?)
    }
}

pub fn write_report(report: &CertificateReport, path: impl AsRef<Path>) -> Result<(), IoError> {
    let path = path.as_ref();
    fs::write(path, report.to_json()).map_err(|e| IoError::io(path, e))
}

pub fn read_report(path: impl AsRef<Path>) -> Result<CertificateReport, IoError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| IoError::io(path, e))?;
    CertificateReport::from_json(&text)
}
