use crate::error::{Error, Result};
use crate::ring::QCoeff;
use crate::tensor::TensorElement;

/// One defining relation `X_i X_j = q^alpha X_j X_i + tail` for `i > j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub alpha: i64,
    pub tail: TensorElement,
}

impl Relation {
    pub fn commuting(alpha: i64) -> Self {
        Relation {
            alpha,
            tail: TensorElement::zero(),
        }
    }
}

/// A presentation in triangular form: every pair of generators `i > j` has a
/// rewriting rule `X_i X_j -> b_ij X_j X_i + p_ij` with `b_ij = q^{alpha_ij}`
/// and `p_ij` a combination of sorted words in letters below `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    name: String,
    n_gens: usize,
    names: Option<Vec<String>>,
    // pair (i, j), 1 <= j < i <= N, stored at index (i-1)(i-2)/2 + (j-1)
    relations: Vec<Option<Relation>>,
    relaxed: bool,
}

fn pair_index(i: usize, j: usize) -> usize {
    (i - 1) * (i - 2) / 2 + (j - 1)
}

impl AlgebraSpec {
    /// A spec with no relations filled in yet.
    pub fn new(name: impl Into<String>, n_gens: usize) -> Result<Self> {
        if n_gens == 0 || n_gens > 255 {
            return Err(Error::InvalidSpec(format!(
                "number of generators must be in 1..=255, got {n_gens}"
            )));
        }
        Ok(AlgebraSpec {
            name: name.into(),
            n_gens,
            names: None,
            relations: vec![None; n_gens * (n_gens - 1) / 2],
            relaxed: false,
        })
    }

    /// Allows tails of degree 0 and 1 (inhomogeneous relations). Such specs
    /// support rewriting only.
    pub fn relaxed(mut self) -> Self {
        self.relaxed = true;
        self
    }

    pub fn is_relaxed(&self) -> bool {
        self.relaxed
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn set_names(&mut self, names: Vec<String>) -> Result<()> {
        if names.len() != self.n_gens {
            return Err(Error::InvalidSpec(format!(
                "expected {} names, got {}",
                self.n_gens,
                names.len()
            )));
        }
        self.names = Some(names);
        Ok(())
    }

    /// Display name of generator `g` (1-based).
    pub fn gen_name(&self, g: usize) -> String {
        match &self.names {
            Some(n) => n[g - 1].clone(),
            None => format!("X{g}"),
        }
    }

    pub fn set_relation(&mut self, i: usize, j: usize, rel: Relation) -> Result<()> {
        if !(1 <= j && j < i && i <= self.n_gens) {
            return Err(Error::InvalidSpec(format!(
                "relation ({i}, {j}) needs 1 <= j < i <= {}",
                self.n_gens
            )));
        }
        self.check_tail(i, &rel.tail)?;
        self.relations[pair_index(i, j)] = Some(rel);
        Ok(())
    }

    fn check_tail(&self, i: usize, tail: &TensorElement) -> Result<()> {
        for (w, _) in tail.iter() {
            let l = w.letters();
            if !self.relaxed && l.len() != 2 {
                return Err(Error::InvalidSpec(format!(
                    "tail of relation for generator {i} has a term of degree {}",
                    l.len()
                )));
            }
            if l.len() > 2 {
                return Err(Error::InvalidSpec(format!(
                    "tail of relation for generator {i} has degree above 2"
                )));
            }
            if !w.is_sorted() {
                return Err(Error::InvalidSpec(format!(
                    "tail word {w} of relation for generator {i} is not normal-ordered"
                )));
            }
            if l.iter().any(|&a| a as usize >= i) {
                return Err(Error::InvalidSpec(format!(
                    "tail word {w} of relation for generator {i} uses a letter not below {i}"
                )));
            }
        }
        Ok(())
    }

    pub fn relation(&self, i: usize, j: usize) -> Result<&Relation> {
        if !(1 <= j && j < i && i <= self.n_gens) {
            return Err(Error::InvalidSpec(format!("no relation slot ({i}, {j})")));
        }
        self.relations[pair_index(i, j)]
            .as_ref()
            .ok_or(Error::MissingRelation(i, j))
    }

    /// Errors with [`Error::MissingRelation`] for the first unset pair.
    pub fn ensure_complete(&self) -> Result<()> {
        for i in 2..=self.n_gens {
            for j in 1..i {
                self.relation(i, j)?;
            }
        }
        Ok(())
    }

    /// True when every tail has degree 2.
    pub fn is_homogeneous(&self) -> bool {
        self.relations
            .iter()
            .flatten()
            .all(|r| r.tail.iter().all(|(w, _)| w.len() == 2))
    }

    /// `b_ij` as a coefficient.
    pub fn b(&self, i: usize, j: usize) -> Result<QCoeff> {
        Ok(QCoeff::q_pow(self.relation(i, j)?.alpha))
    }

    /// All `(i, j, relation)` with `i > j`, ordered by `i` then `j`.
    pub fn relations(&self) -> impl Iterator<Item = (usize, usize, &Relation)> {
        (2..=self.n_gens).flat_map(move |i| {
            (1..i).filter_map(move |j| {
                self.relations[pair_index(i, j)]
                    .as_ref()
                    .map(|r| (i, j, r))
            })
        })
    }
}
