use serde::{Deserialize, Serialize};

use crate::error::{Result, ScatterError};
use crate::wavelet::{BankDescriptor, FilterBank, ScaleKind};

/// Which index set a coefficient tensor lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lattice {
    /// One index per layer: the scale.
    Plain,
    /// `(scale, angle)` per layer.
    Equivariant,
    /// Scales for every layer, relative angles for layers 2..m; the first
    /// angle has been integrated out.
    Invariant,
}

/// A scattering path: one scale index per layer and, for rotated
/// lattices, angle indices (absolute for equivariant lattices, relative to
/// the first angle and starting at layer 2 for invariant ones).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScatteringPath {
    pub scales: Vec<usize>,
    pub rotations: Vec<usize>,
}

impl ScatteringPath {
    pub fn new(scales: Vec<usize>) -> Self {
        ScatteringPath {
            scales,
            rotations: Vec::new(),
        }
    }

    pub fn rotated(scales: Vec<usize>, rotations: Vec<usize>) -> Self {
        ScatteringPath { scales, rotations }
    }

    pub fn depth(&self) -> usize {
        self.scales.len()
    }

    /// Human-readable label such as `s0.r1/s2.r3`.
    pub fn label(&self, lattice: Lattice) -> String {
        self.scales
            .iter()
            .enumerate()
            .map(|(l, s)| {
                let r = match lattice {
                    Lattice::Plain => None,
                    Lattice::Equivariant => self.rotations.get(l),
                    Lattice::Invariant if l == 0 => None,
                    Lattice::Invariant => self.rotations.get(l - 1),
                };
                match r {
                    Some(r) => format!("s{s}.r{r}"),
                    None => format!("s{s}"),
                }
            })
            .collect::<Vec<_>>()
            .join("/")
    }
}

/// Nonnegative coefficients over a full path lattice, in lexicographic
/// path order, with the per-path quadrature weights used by the norms.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringCoefficients {
    kind: ScaleKind,
    q: f64,
    m: usize,
    lattice: Lattice,
    scales: Vec<f64>,
    angles: Vec<f64>,
    descriptor: Option<BankDescriptor>,
    values: Vec<f64>,
    weights: Vec<f64>,
}

/// Number of index values taken by layer `layer` (0-based).
fn radix(lattice: Lattice, layer: usize, scales: usize, rotations: usize) -> usize {
    match lattice {
        Lattice::Plain => scales,
        Lattice::Equivariant => scales * rotations,
        Lattice::Invariant if layer == 0 => scales,
        Lattice::Invariant => scales * rotations,
    }
}

/// Number of coefficients in a lattice.
pub fn lattice_size(lattice: Lattice, m: usize, scales: usize, rotations: usize) -> Option<usize> {
    (0..m).try_fold(1usize, |acc, l| acc.checked_mul(radix(lattice, l, scales, rotations)))
}

impl ScatteringCoefficients {
    pub(crate) fn from_parts(
        bank: &FilterBank,
        lattice: Lattice,
        m: usize,
        q: f64,
        values: Vec<f64>,
        weights: Vec<f64>,
    ) -> Self {
        ScatteringCoefficients {
            kind: bank.kind(),
            q,
            m,
            lattice,
            scales: bank.scale_grid().scales().to_vec(),
            angles: bank.angles(),
            descriptor: Some(bank.descriptor()),
            values,
            weights,
        }
    }

    /// Assemble coefficients read from storage; the lattice size is checked.
    #[allow(clippy::too_many_arguments)]
    pub fn from_raw(
        kind: ScaleKind,
        q: f64,
        m: usize,
        lattice: Lattice,
        scales: Vec<f64>,
        angles: Vec<f64>,
        values: Vec<f64>,
        weights: Vec<f64>,
    ) -> Result<Self> {
        let rotations = angles.len().max(1);
        if lattice != Lattice::Plain && angles.len() < 2 {
            return Err(ScatterError::Format("rotated lattices need at least two angles".into()));
        }
        if lattice == Lattice::Plain && angles.len() > 1 {
            return Err(ScatterError::Format("a plain lattice cannot carry angles".into()));
        }
        let expected = lattice_size(lattice, m, scales.len(), rotations)
            .ok_or_else(|| ScatterError::Format("lattice size overflows".into()))?;
        if m == 0 || values.len() != expected || weights.len() != expected {
            return Err(ScatterError::Format(format!(
                "expected {expected} values and weights, got {} and {}",
                values.len(),
                weights.len()
            )));
        }
        if values.iter().chain(&weights).any(|v| !v.is_finite()) {
            return Err(ScatterError::Numeric("stored coefficients are not finite".into()));
        }
        Ok(ScatteringCoefficients {
            kind,
            q,
            m,
            lattice,
            scales,
            angles,
            descriptor: None,
            values,
            weights,
        })
    }

    pub(crate) fn with_values(&self, lattice: Lattice, values: Vec<f64>, weights: Vec<f64>) -> Self {
        ScatteringCoefficients {
            lattice,
            values,
            weights,
            ..self.clone()
        }
    }

    pub fn kind(&self) -> ScaleKind {
        self.kind
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Exponent `2 / q` of the scattering norm.
    pub fn p(&self) -> f64 {
        2.0 / self.q
    }

    pub fn depth(&self) -> usize {
        self.m
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    /// Rotation angles in radians; empty for plain lattices.
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn scale_count(&self) -> usize {
        self.scales.len()
    }

    pub fn rotation_count(&self) -> usize {
        self.angles.len().max(1)
    }

    pub fn descriptor(&self) -> Option<&BankDescriptor> {
        self.descriptor.as_ref()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn radix(&self, layer: usize) -> usize {
        radix(self.lattice, layer, self.scale_count(), self.rotation_count())
    }

    /// Path stored at position `index`.
    pub fn path(&self, index: usize) -> ScatteringPath {
        let mut digits = vec![0usize; self.m];
        let mut rest = index;
        for layer in (0..self.m).rev() {
            let r = self.radix(layer);
            digits[layer] = rest % r;
            rest /= r;
        }
        let n = self.rotation_count();
        match self.lattice {
            Lattice::Plain => ScatteringPath::new(digits),
            Lattice::Equivariant => ScatteringPath::rotated(
                digits.iter().map(|d| d / n).collect(),
                digits.iter().map(|d| d % n).collect(),
            ),
            Lattice::Invariant => ScatteringPath::rotated(
                digits
                    .iter()
                    .enumerate()
                    .map(|(l, d)| if l == 0 { *d } else { d / n })
                    .collect(),
                digits[1..].iter().map(|d| d % n).collect(),
            ),
        }
    }

    /// Position of `path`, or a path error if it is not on the lattice.
    pub fn index_of(&self, path: &ScatteringPath) -> Result<usize> {
        let n = self.rotation_count();
        let s = self.scale_count();
        let bad = || ScatterError::Path(format!("path {path:?} is not on this lattice"));
        if path.scales.len() != self.m || path.scales.iter().any(|&x| x >= s) {
            return Err(bad());
        }
        let rot_len = match self.lattice {
            Lattice::Plain => 0,
            Lattice::Equivariant => self.m,
            Lattice::Invariant => self.m - 1,
        };
        if path.rotations.len() != rot_len || path.rotations.iter().any(|&r| r >= n) {
            return Err(bad());
        }
        let mut idx = 0usize;
        for layer in 0..self.m {
            let digit = match self.lattice {
                Lattice::Plain => path.scales[layer],
                Lattice::Equivariant => path.scales[layer] * n + path.rotations[layer],
                Lattice::Invariant if layer == 0 => path.scales[0],
                Lattice::Invariant => path.scales[layer] * n + path.rotations[layer - 1],
            };
            idx = idx * self.radix(layer) + digit;
        }
        Ok(idx)
    }

    pub fn get(&self, path: &ScatteringPath) -> Result<f64> {
        Ok(self.values[self.index_of(path)?])
    }

    /// Iterate `(path, value, weight)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (ScatteringPath, f64, f64)> + '_ {
        (0..self.len()).map(move |i| (self.path(i), self.values[i], self.weights[i]))
    }

    /// Errors unless `other` can be compared with `self` path by path.
    pub fn check_compatible(&self, other: &ScatteringCoefficients) -> Result<()> {
        let mut problems = Vec::new();
        if self.kind != other.kind {
            problems.push("scale mode");
        }
        if self.q != other.q {
            problems.push("q");
        }
        if self.m != other.m {
            problems.push("depth");
        }
        if self.lattice != other.lattice {
            problems.push("lattice");
        }
        if self.scales != other.scales {
            problems.push("scales");
        }
        if self.angles != other.angles {
            problems.push("angles");
        }
        if let (Some(a), Some(b)) = (&self.descriptor, &other.descriptor) {
            if a != b {
                problems.push("filter bank");
            }
        }
        if problems.is_empty() && self.weights != other.weights {
            problems.push("weights");
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(ScatterError::Incompatible(format!(
                "coefficients differ in {}",
                problems.join(", ")
            )))
        }
    }
}
