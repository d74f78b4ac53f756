use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{smith_normal_form, FGAbelianGroup, GroupElem, IntMatrix};
use crate::error::{Error, Result};

/// A homomorphism given by its matrix on the canonical generating sets:
/// column `j` holds the image of source generator `j` in target coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FGAbelianGroup,
    target: FGAbelianGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Validates that every source relation maps into the target relation
    /// lattice; torsion rows of the stored matrix are reduced.
    pub fn new(source: FGAbelianGroup, target: FGAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::NotAHomomorphism(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        for (k, d) in source.torsion().iter().enumerate() {
            let j = source.free_rank() + k;
            for i in 0..target.ngens() {
                let img = &matrix[(i, j)] * d;
                let order = target.generator_order(i);
                let killed = if order.is_zero() { img.is_zero() } else { img.is_multiple_of(&order) };
                if !killed {
                    return Err(Error::NotAHomomorphism(format!(
                        "relation {d}*e{j} of {source} does not map to zero in {target}"
                    )));
                }
            }
        }
        let mut matrix = matrix;
        for (k, d) in target.torsion().iter().enumerate() {
            let i = target.free_rank() + k;
            for j in 0..matrix.cols() {
                let r = matrix[(i, j)].mod_floor(d);
                matrix[(i, j)] = r;
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn identity(g: &FGAbelianGroup) -> Self {
        GroupHom::new(g.clone(), g.clone(), IntMatrix::identity(g.ngens())).expect("identity is a homomorphism")
    }

    pub fn zero(source: &FGAbelianGroup, target: &FGAbelianGroup) -> Self {
        GroupHom::new(source.clone(), target.clone(), IntMatrix::zeros(target.ngens(), source.ngens()))
            .expect("zero map is a homomorphism")
    }

    /// Multiplication by `k` on `g`.
    pub fn scalar(g: &FGAbelianGroup, k: i64) -> Self {
        let mut m = IntMatrix::identity(g.ngens());
        for i in 0..g.ngens() {
            m[(i, i)] = BigInt::from(k);
        }
        GroupHom::new(g.clone(), g.clone(), m).expect("scalar map is a homomorphism")
    }

    /// The map `Z^k -> g` sending the `i`-th basis vector to `elems[i]`.
    pub fn from_images(g: &FGAbelianGroup, elems: &[GroupElem]) -> Result<Self> {
        let mut m = IntMatrix::zeros(g.ngens(), elems.len());
        for (j, e) in elems.iter().enumerate() {
            if !g.contains(e) {
                return Err(Error::GroupMismatch { elem: e.to_string(), group: g.to_string() });
            }
            for (i, c) in e.coords().into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        GroupHom::new(FGAbelianGroup::free(elems.len()), g.clone(), m)
    }

    pub fn source(&self) -> &FGAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FGAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn apply(&self, g: &GroupElem) -> Result<GroupElem> {
        if !self.source.contains(g) {
            return Err(Error::GroupMismatch { elem: g.to_string(), group: self.source.to_string() });
        }
        self.target.from_coords(&self.matrix.mul_vec(&g.coords()))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.target != other.source {
            return Err(Error::NotAHomomorphism(format!(
                "cannot compose: {} != {}",
                self.target, other.source
            )));
        }
        GroupHom::new(self.source.clone(), other.target.clone(), &other.matrix * &self.matrix)
    }

    pub fn sub(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::NotAHomomorphism("difference of maps with different domains".into()));
        }
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m[(i, j)] -= &other.matrix[(i, j)];
            }
        }
        GroupHom::new(self.source.clone(), self.target.clone(), m)
    }

    pub fn is_zero_map(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// `target / image(f)` with the canonical projection and a set-theoretic
/// section (`section` column `j` lifts quotient generator `j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub group: FGAbelianGroup,
    pub projection: GroupHom,
    pub section: IntMatrix,
}

impl Cokernel {
    pub fn lift(&self, g: &GroupElem) -> Result<GroupElem> {
        if !self.group.contains(g) {
            return Err(Error::GroupMismatch { elem: g.to_string(), group: self.group.to_string() });
        }
        self.projection.source.from_coords(&self.section.mul_vec(&g.coords()))
    }
}

pub fn cokernel(f: &GroupHom) -> Cokernel {
    let target = &f.target;
    let relations = f.matrix.hstack(&target.relation_matrix());
    let snf = smith_normal_form(&relations);
    let diag = snf.invariants();
    let n = target.ngens();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();

    let free_rows: Vec<usize> = (rank..n).collect();
    let torsion_rows: Vec<usize> = (0..rank).filter(|&i| !diag[i].is_one()).collect();
    let torsion: Vec<BigInt> = torsion_rows.iter().map(|&i| diag[i].clone()).collect();
    let group = FGAbelianGroup::from_invariants(free_rows.len(), torsion).expect("SNF diagonal is a divisibility chain");

    let rows: Vec<usize> = free_rows.iter().chain(&torsion_rows).copied().collect();
    let projection = GroupHom::new(target.clone(), group.clone(), snf.u.select_rows(&rows))
        .expect("row transform defines the quotient map");
    let section = snf.u_inv.select_cols(&rows);
    Cokernel { group, projection, section }
}
