use nalgebra::DMatrix;
use num_complex::Complex64;

use super::gates::CMatrix;
use crate::{Error, Result};

/// One tensor factor of a Pauli string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub fn dense(self) -> CMatrix {
        let c = Complex64::new;
        match self {
            PauliLetter::I => DMatrix::identity(2, 2),
            PauliLetter::X => {
                CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
            }
            PauliLetter::Y => {
                CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
            }
            PauliLetter::Z => {
                CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])
            }
        }
    }

    pub fn symbol(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }
}

/// An n-qubit Pauli observable, one letter per qubit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    letters: Vec<PauliLetter>,
}

impl PauliString {
    pub fn from_letters(letters: Vec<PauliLetter>) -> Self {
        Self { letters }
    }

    /// Parses symbols like "XZI" (one letter per qubit, qubit 0 first).
    pub fn parse(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|ch| match ch {
                'I' => Ok(PauliLetter::I),
                'X' => Ok(PauliLetter::X),
                'Y' => Ok(PauliLetter::Y),
                'Z' => Ok(PauliLetter::Z),
                other => Err(Error::invalid(format!("unknown Pauli symbol '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { letters })
    }

    pub fn n(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[PauliLetter] {
        &self.letters
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.letters
            .iter()
            .filter(|l| !matches!(l, PauliLetter::I))
            .count()
    }

    /// Indices of the non-identity letters.
    pub fn support(&self) -> Vec<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, l)| !matches!(l, PauliLetter::I))
            .map(|(q, _)| q)
            .collect()
    }

    /// Dense 2^n x 2^n representation (tests and small n only).
    pub fn dense(&self) -> CMatrix {
        let mut m = CMatrix::identity(1, 1);
        for l in &self.letters {
            m = m.kronecker(&l.dense());
        }
        m
    }

    pub fn label(&self) -> String {
        self.letters.iter().map(|l| l.symbol()).collect()
    }
}

/// The ordered set of k-local Pauli observables on n qubits, identity
/// excluded. Order: ascending weight, then lexicographic support, then
/// letter assignment with X < Y < Z. The order is part of the feature
/// layout contract.
#[derive(Debug, Clone)]
pub struct ObservableSet {
    n: usize,
    k: usize,
    strings: Vec<PauliString>,
}

impl ObservableSet {
    pub fn k_local(n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be at least 1"));
        }
        if k == 0 || k > n {
            return Err(Error::invalid(format!("locality k={k} out of range for n={n}")));
        }
        let non_identity = [PauliLetter::X, PauliLetter::Y, PauliLetter::Z];
        let mut strings = Vec::new();
        for weight in 1..=k {
            for support in combinations(n, weight) {
                let mut assignment = vec![0usize; weight];
                loop {
                    let mut letters = vec![PauliLetter::I; n];
                    for (pos, &q) in support.iter().enumerate() {
                        letters[q] = non_identity[assignment[pos]];
                    }
                    strings.push(PauliString::from_letters(letters));
                    // odometer over letter assignments, last position fastest
                    let mut pos = weight;
                    loop {
                        if pos == 0 {
                            break;
                        }
                        pos -= 1;
                        assignment[pos] += 1;
                        if assignment[pos] < 3 {
                            break;
                        }
                        assignment[pos] = 0;
                    }
                    if assignment.iter().all(|&a| a == 0) {
                        break;
                    }
                }
            }
        }
        Ok(Self { n, k, strings })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn strings(&self) -> &[PauliString] {
        &self.strings
    }
}

/// Lexicographic size-`k` subsets of {0, ..., n-1}.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if idx[pos] < n - (k - pos) {
                idx[pos] += 1;
                for later in pos + 1..k {
                    idx[later] = idx[later - 1] + 1;
                }
                break;
            }
        }
    }
}
