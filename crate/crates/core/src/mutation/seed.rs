use super::{fn_mutate, ExchangeCollection, MutationError};
use crate::algebra::{BinomialRationalFn, LaurentPoly};
use crate::lattice::{LatticeVector, SkewForm};

/// Soft validity flags. Seeds violating them can still be built and mutated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedValidation {
    pub all_primitive: bool,
    pub nondegenerate: bool,
    pub no_zero_vector: bool,
}

impl SeedValidation {
    fn of(form: &SkewForm, collection: &ExchangeCollection) -> Self {
        SeedValidation {
            all_primitive: collection.all_primitive(),
            nondegenerate: !form.is_degenerate(),
            no_zero_vector: !collection.has_zero_vector(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.all_primitive && self.nondegenerate && self.no_zero_vector
    }
}

fn check_rank(form: &SkewForm, collection: &ExchangeCollection) -> Result<(), MutationError> {
    if form.rank() != collection.rank() {
        return Err(MutationError::RankMismatch { left: form.rank(), right: collection.rank() });
    }
    Ok(())
}

/// A seed carrying a potential: `(ω, V, W)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VSeed {
    form: SkewForm,
    collection: ExchangeCollection,
    potential: BinomialRationalFn,
}

impl VSeed {
    pub fn new(
        form: SkewForm,
        collection: ExchangeCollection,
        potential: BinomialRationalFn,
    ) -> Result<Self, MutationError> {
        check_rank(&form, &collection)?;
        if potential.rank() != form.rank() {
            return Err(MutationError::RankMismatch { left: form.rank(), right: potential.rank() });
        }
        Ok(VSeed { form, collection, potential })
    }

    pub fn form(&self) -> &SkewForm {
        &self.form
    }

    pub fn collection(&self) -> &ExchangeCollection {
        &self.collection
    }

    pub fn potential(&self) -> &BinomialRationalFn {
        &self.potential
    }

    pub fn validation(&self) -> SeedValidation {
        SeedValidation::of(&self.form, &self.collection)
    }

    /// Mutates the collection and the potential at `d`.
    pub fn mutate(&self, d: &LatticeVector) -> Result<VSeed, MutationError> {
        let collection = self.collection.mutate(d, &self.form)?;
        let potential = fn_mutate(&self.potential, d, &self.form)?;
        Ok(VSeed { form: self.form.clone(), collection, potential })
    }

    /// `times` consecutive mutations at the same direction `d`.
    pub fn mutate_times(&self, d: &LatticeVector, times: u32) -> Result<VSeed, MutationError> {
        let mut s = self.clone();
        for _ in 0..times {
            s = s.mutate(d)?;
        }
        Ok(s)
    }
}

/// A seed carrying a cluster of functions: `(ω, V, {x_i})`.
#[derive(Debug, Clone, PartialEq)]
pub struct CSeed {
    form: SkewForm,
    collection: ExchangeCollection,
    cluster: Vec<BinomialRationalFn>,
}

impl CSeed {
    /// Cluster given by the coordinate functions `x_1, ..., x_r`.
    pub fn base(form: SkewForm, collection: ExchangeCollection) -> Result<Self, MutationError> {
        check_rank(&form, &collection)?;
        let r = form.rank();
        let cluster = (0..r).map(|i| BinomialRationalFn::from_laurent(LaurentPoly::var(r, i))).collect();
        Ok(CSeed { form, collection, cluster })
    }

    pub fn new(
        form: SkewForm,
        collection: ExchangeCollection,
        cluster: Vec<BinomialRationalFn>,
    ) -> Result<Self, MutationError> {
        check_rank(&form, &collection)?;
        if cluster.is_empty() {
            return Err(MutationError::EmptyCluster);
        }
        if let Some(f) = cluster.iter().find(|f| f.rank() != form.rank()) {
            return Err(MutationError::RankMismatch { left: form.rank(), right: f.rank() });
        }
        Ok(CSeed { form, collection, cluster })
    }

    pub fn form(&self) -> &SkewForm {
        &self.form
    }

    pub fn collection(&self) -> &ExchangeCollection {
        &self.collection
    }

    pub fn cluster(&self) -> &[BinomialRationalFn] {
        &self.cluster
    }

    pub fn validation(&self) -> SeedValidation {
        SeedValidation::of(&self.form, &self.collection)
    }

    /// True when the cluster is exactly `x_1, ..., x_r`.
    pub fn is_base_cluster(&self) -> bool {
        let r = self.form.rank();
        self.cluster.len() == r
            && self.cluster.iter().enumerate().all(|(i, f)| {
                f.denominators().is_empty() && f.numerator() == &LaurentPoly::var(r, i)
            })
    }

    pub fn mutate(&self, d: &LatticeVector) -> Result<CSeed, MutationError> {
        let collection = self.collection.mutate(d, &self.form)?;
        let cluster = self
            .cluster
            .iter()
            .map(|f| fn_mutate(f, d, &self.form))
            .collect::<Result<_, _>>()?;
        Ok(CSeed { form: self.form.clone(), collection, cluster })
    }
}
