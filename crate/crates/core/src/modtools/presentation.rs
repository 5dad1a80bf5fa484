use crate::ring::{GroupAlgebraMatrix, Ring, RingElem};

/// A finitely presented module: the cokernel of the relation matrix whose
/// columns are `relations`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub ring: Ring,
    pub generator_names: Vec<String>,
    /// One entry per relation, each of length `num_generators()`.
    pub relations: Vec<Vec<RingElem>>,
    /// Internal degrees of the generators for graded presentations.
    pub degrees: Option<Vec<i64>>,
}

impl ModulePresentation {
    pub fn new(ring: Ring, generator_names: Vec<String>, relations: Vec<Vec<RingElem>>) -> Self {
        for r in &relations {
            assert_eq!(r.len(), generator_names.len(), "relation length");
        }
        ModulePresentation { ring, generator_names, relations, degrees: None }
    }

    pub fn free(ring: Ring, rank: usize) -> Self {
        let names = (1..=rank).map(|i| format!("e{i}")).collect();
        Self::new(ring, names, Vec::new())
    }

    pub fn num_generators(&self) -> usize {
        self.generator_names.len()
    }

    pub fn num_relations(&self) -> usize {
        self.relations.len()
    }

    /// Relation matrix with one row per generator.
    pub fn matrix(&self) -> GroupAlgebraMatrix {
        GroupAlgebraMatrix::from_columns(self.ring.clone(), self.num_generators(), &self.relations)
    }

    pub fn from_matrix(mat: &GroupAlgebraMatrix, generator_names: Vec<String>) -> Self {
        Self::new(mat.ring.clone(), generator_names, mat.columns())
    }

    /// Same relations read over another ring with the same variables.
    pub fn coerce(&self, ring: &Ring) -> Self {
        let relations = self
            .relations
            .iter()
            .map(|c| c.iter().map(|x| self.ring.coerce(x, ring)).collect())
            .collect();
        ModulePresentation {
            ring: ring.clone(),
            generator_names: self.generator_names.clone(),
            relations,
            degrees: self.degrees.clone(),
        }
    }

    /// Drops zero relation columns.
    pub fn prune(mut self) -> Self {
        self.relations.retain(|c| c.iter().any(|x| !x.is_zero()));
        self
    }

    /// Relation columns in canonical text form.
    pub fn format_relations(&self) -> Vec<Vec<String>> {
        self.relations.iter().map(|c| c.iter().map(|x| self.ring.format(x)).collect()).collect()
    }
}
