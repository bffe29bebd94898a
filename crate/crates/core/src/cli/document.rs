//! JSON circuit documents.
//!
//! Qubits are numbered globally: the `extra_qubits` first, then each party's
//! qubits in party order. Complex numbers are `[re, im]` pairs and matrices
//! are lists of rows.

use serde::{Deserialize, Serialize};

use crate::linalg::{embed_operator, gates, hermiticity_deviation, permute_subsystems, tensor_all, unitarity_deviation};
use crate::linalg::{inverse_permutation, ComplexMatrix, ComplexVector, C64};
use crate::protocols::validate_povm;
use crate::separable::{party_grouping_perm, SeparableOperator};

use super::CliError;

pub const VERSION: &str = "realq/1";

/// Unitarity / Hermiticity tolerance for document contents.
pub const DOCUMENT_TOL: f64 = 1e-8;

pub type RawMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CircuitDocument {
    pub version: String,
    pub registers: RegisterDecl,
    #[serde(default)]
    pub gates: Vec<GateEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accept: Option<AcceptSection>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RegisterDecl {
    /// Qubit count per party.
    pub parties: Vec<usize>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub extra_qubits: usize,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GateEntry {
    pub gate: String,
    pub targets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<RawMatrix>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum AcceptSection {
    /// Product projector, one of `0 1 + - +i -i` per qubit.
    Projector { states: Vec<String> },
    Raw { matrix: RawMatrix },
    /// `terms[j][k]` is party `k`'s factor in term `j`.
    Separable { terms: Vec<Vec<RawMatrix>> },
}

#[derive(Clone, Debug)]
pub struct Gate {
    pub name: String,
    pub targets: Vec<usize>,
    pub matrix: ComplexMatrix,
}

#[derive(Clone, Debug)]
pub enum Accept {
    Full(ComplexMatrix),
    Separable(SeparableOperator),
}

/// A validated document.
#[derive(Clone, Debug)]
pub struct Circuit {
    pub parties: Vec<usize>,
    pub extra_qubits: usize,
    pub gates: Vec<Gate>,
    pub accept: Option<Accept>,
}

pub fn to_raw(m: &ComplexMatrix) -> RawMatrix {
    // `+ 0.0` turns -0.0 into 0.0
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|z| [z.re + 0.0, z.im + 0.0]).collect())
        .collect()
}

/// Converts a raw matrix, naming the offending row on shape errors.
pub fn from_raw(raw: &RawMatrix, what: &str) -> Result<ComplexMatrix, CliError> {
    let n = raw.len();
    if n == 0 {
        return Err(CliError::Parse(format!("{what}: matrix has no rows")));
    }
    for (i, row) in raw.iter().enumerate() {
        if row.len() != n {
            return Err(CliError::Parse(format!(
                "{what}: row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
    }
    let rows: Vec<Vec<C64>> = raw.iter().map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect()).collect();
    ComplexMatrix::from_rows(&rows).map_err(|e| CliError::Parse(format!("{what}: {e}")))
}

fn named_state(name: &str) -> Option<ComplexVector> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let v = match name {
        "0" => [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        "1" => [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        "+" => [C64::new(h, 0.0), C64::new(h, 0.0)],
        "-" => [C64::new(h, 0.0), C64::new(-h, 0.0)],
        "+i" => [C64::new(h, 0.0), C64::new(0.0, h)],
        "-i" => [C64::new(h, 0.0), C64::new(0.0, -h)],
        _ => return None,
    };
    Some(ComplexVector::new(v.to_vec()))
}

fn named_gate(entry: &GateEntry, index: usize) -> Result<ComplexMatrix, CliError> {
    let arity = |k: usize| {
        if entry.targets.len() == k {
            Ok(())
        } else {
            Err(CliError::Validation(format!(
                "gate {index} ({}) takes {k} target(s), got {}",
                entry.gate,
                entry.targets.len()
            )))
        }
    };
    let m = match entry.gate.as_str() {
        "I" => gates::identity(),
        "X" => gates::pauli_x(),
        "Y" => gates::pauli_y(),
        "Z" => gates::pauli_z(),
        "H" => gates::hadamard(),
        "S" => gates::s(),
        "T" => gates::t(),
        "PHASE" => {
            let theta = entry
                .theta
                .ok_or_else(|| CliError::Validation(format!("gate {index} (PHASE) needs theta")))?;
            gates::phase(theta)
        }
        "CNOT" => {
            arity(2)?;
            return Ok(gates::cnot());
        }
        "RAW" => {
            let raw = entry
                .matrix
                .as_ref()
                .ok_or_else(|| CliError::Validation(format!("gate {index} (RAW) needs a matrix")))?;
            let m = from_raw(raw, &format!("gate {index}"))?;
            if m.rows() != 1 << entry.targets.len() {
                return Err(CliError::Validation(format!(
                    "gate {index}: {}x{} matrix on {} target(s)",
                    m.rows(),
                    m.cols(),
                    entry.targets.len()
                )));
            }
            return Ok(m);
        }
        other => return Err(CliError::Validation(format!("gate {index}: unknown gate {other:?}"))),
    };
    arity(1)?;
    Ok(m)
}

impl CircuitDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        super::json::to_pretty(self)
    }

    /// Shape checks (parse errors) first, then invariants (validation
    /// errors).
    pub fn resolve(&self) -> Result<Circuit, CliError> {
        if self.version != VERSION {
            return Err(CliError::Validation(format!(
                "unsupported version {:?}, expected {VERSION:?}",
                self.version
            )));
        }
        let parties = self.registers.parties.clone();
        if parties.is_empty() || parties.contains(&0) {
            return Err(CliError::Validation("every party needs at least one qubit".into()));
        }
        let circuit = Circuit { parties, extra_qubits: self.registers.extra_qubits, gates: Vec::new(), accept: None };
        let n = circuit.total_qubits();
        if n > 12 {
            return Err(CliError::Validation(format!("{n} qubits exceeds the supported 12")));
        }
        let mut gates_out = Vec::with_capacity(self.gates.len());
        for (i, g) in self.gates.iter().enumerate() {
            let m = named_gate(g, i)?;
            let mut seen = vec![false; n];
            for &t in &g.targets {
                if t >= n || std::mem::replace(&mut seen[t], true) {
                    return Err(CliError::Validation(format!(
                        "gate {i}: targets {:?} invalid for {n} qubits",
                        g.targets
                    )));
                }
            }
            let deviation = unitarity_deviation(&m);
            if deviation > DOCUMENT_TOL {
                return Err(CliError::Validation(format!("gate {i} is not unitary (deviation {deviation:e})")));
            }
            gates_out.push(Gate { name: g.gate.clone(), targets: g.targets.clone(), matrix: m });
        }
        let accept = self.accept.as_ref().map(|a| circuit.resolve_accept(a)).transpose()?;
        Ok(Circuit { gates: gates_out, accept, ..circuit })
    }
}

impl Circuit {
    pub fn total_qubits(&self) -> usize {
        self.extra_qubits + self.parties.iter().sum::<usize>()
    }

    pub fn dim(&self) -> usize {
        1 << self.total_qubits()
    }

    /// Party owning global qubit `q`, `None` for extra qubits.
    pub fn party_of(&self, q: usize) -> Option<usize> {
        let mut start = self.extra_qubits;
        for (k, &n) in self.parties.iter().enumerate() {
            if q >= start && q < start + n {
                return Some(k);
            }
            start += n;
        }
        None
    }

    /// First global qubit of party `k`.
    pub fn party_offset(&self, k: usize) -> usize {
        self.extra_qubits + self.parties[..k].iter().sum::<usize>()
    }

    /// Dimension of each separable factor: the party's qubits, plus its own
    /// extra qubit when the document carries one per party.
    pub fn factor_dims(&self) -> Result<Vec<usize>, CliError> {
        let bump = match self.extra_qubits {
            0 => 0,
            e if e == self.parties.len() => 1,
            e => {
                return Err(CliError::Validation(format!(
                    "separable accept needs 0 or {} extra qubits, document has {e}",
                    self.parties.len()
                )))
            }
        };
        Ok(self.parties.iter().map(|&q| 1 << (q + bump)).collect())
    }

    fn resolve_accept(&self, a: &AcceptSection) -> Result<Accept, CliError> {
        let accept = match a {
            AcceptSection::Projector { states } => {
                if states.len() != self.total_qubits() {
                    return Err(CliError::Validation(format!(
                        "projector lists {} states for {} qubits",
                        states.len(),
                        self.total_qubits()
                    )));
                }
                let vs = states
                    .iter()
                    .map(|s| named_state(s).ok_or_else(|| CliError::Validation(format!("unknown state {s:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                let ps: Vec<ComplexMatrix> = vs.iter().map(ComplexVector::projector).collect();
                if self.extra_qubits == 0 && self.parties.len() >= 2 {
                    // a product projector is a one-term separable operator
                    let mut rest = ps.as_slice();
                    let factors = self
                        .parties
                        .iter()
                        .map(|&q| {
                            let (mine, tail) = rest.split_at(q);
                            rest = tail;
                            tensor_all(mine)
                        })
                        .collect();
                    let op = SeparableOperator::new(self.factor_dims()?, vec![factors])
                        .map_err(|e| CliError::Validation(e.to_string()))?;
                    Accept::Separable(op)
                } else {
                    Accept::Full(tensor_all(&ps))
                }
            }
            AcceptSection::Raw { matrix } => {
                let m = from_raw(matrix, "accept")?;
                if m.rows() != self.dim() {
                    return Err(CliError::Validation(format!(
                        "accept matrix has dimension {}, register has {}",
                        m.rows(),
                        self.dim()
                    )));
                }
                let deviation = hermiticity_deviation(&m);
                if deviation > DOCUMENT_TOL {
                    return Err(CliError::Validation(format!(
                        "accept matrix is not Hermitian (deviation {deviation:e})"
                    )));
                }
                Accept::Full(m)
            }
            AcceptSection::Separable { terms } => {
                let dims = self.factor_dims()?;
                let mut factors = Vec::with_capacity(terms.len());
                for (j, term) in terms.iter().enumerate() {
                    let fs = term
                        .iter()
                        .enumerate()
                        .map(|(k, raw)| from_raw(raw, &format!("accept term {j} factor {k}")))
                        .collect::<Result<Vec<_>, _>>()?;
                    factors.push(fs);
                }
                let op = SeparableOperator::with_tolerance(dims, factors, DOCUMENT_TOL)
                    .map_err(|e| CliError::Validation(e.to_string()))?;
                Accept::Separable(op)
            }
        };
        validate_povm(&self.accept_matrix_of(&accept)?, DOCUMENT_TOL)
            .map_err(|e| CliError::Validation(format!("accept: {e}")))?;
        Ok(accept)
    }

    fn accept_matrix_of(&self, a: &Accept) -> Result<ComplexMatrix, CliError> {
        match a {
            Accept::Full(m) => Ok(m.clone()),
            Accept::Separable(op) => {
                let grouped = op.to_matrix();
                if self.extra_qubits == 0 {
                    return Ok(grouped);
                }
                // (x_k, sys_k) factors back into global order: extras first
                let m = self.parties.len();
                let dims: Vec<usize> = self.parties.iter().flat_map(|&q| [2, 1 << q]).collect();
                let perm = inverse_permutation(&party_grouping_perm(m));
                permute_subsystems(&grouped, &dims, &perm).map_err(|e| CliError::Validation(e.to_string()))
            }
        }
    }

    /// The accept operator on the full register in global qubit order.
    pub fn accept_matrix(&self) -> Option<Result<ComplexMatrix, CliError>> {
        self.accept.as_ref().map(|a| self.accept_matrix_of(a))
    }

    /// Gate `g` on the full register.
    pub fn full_gate(&self, g: &Gate) -> ComplexMatrix {
        embed_operator(&g.matrix, &vec![2; self.total_qubits()], &g.targets).expect("targets validated")
    }

    /// The party a gate acts within, or `None` if it touches extra qubits or
    /// several parties.
    pub fn gate_party(&self, g: &Gate) -> Option<usize> {
        let first = self.party_of(g.targets[0])?;
        g.targets.iter().all(|&t| self.party_of(t) == Some(first)).then_some(first)
    }
}
