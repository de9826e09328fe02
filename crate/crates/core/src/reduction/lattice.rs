//! Monomial changes of variables that make the supports span the whole integer lattice.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::smith::{hermite_basis, lattice_coordinates, smith_normal_form, IntMatrix, SmithForm};
use crate::algsys::{AlgPoly, AlgPolySystem};
use crate::error::{Error, Result};

/// `z_j = Π_k x_k^{basis[j][k]}`; every relative support `e` becomes `w` with `w·basis = e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeTransform {
    pub system: AlgPolySystem,
    /// Smith form of the matrix whose rows are all relative supports.
    pub smith: SmithForm,
    /// Hermite basis of the support lattice.
    pub basis: IntMatrix,
}

impl LatticeTransform {
    pub fn is_identity(&self) -> bool {
        self.smith.invariant_factors().iter().all(One::is_one)
    }

    /// `z_j = x_1^a·x_2^b…` per new variable, with the old variable names.
    pub fn describe(&self, old: &[String]) -> Vec<String> {
        self.basis
            .iter()
            .zip(&self.system.vars)
            .map(|(row, z)| {
                let factors: Vec<String> = row
                    .iter()
                    .zip(old)
                    .filter(|(e, _)| !e.is_zero())
                    .map(|(e, x)| if e.is_one() { x.clone() } else { format!("{x}^{e}") })
                    .collect();
                format!("{z} = {}", factors.join("*"))
            })
            .collect()
    }
}

/// Moves each polynomial's reference term to the origin and rewrites the supports in the
/// coordinates of the support lattice. Fails when the supports span a proper sublattice
/// of lower rank.
pub fn smith_transform(sys: &AlgPolySystem) -> Result<LatticeTransform> {
    let dim = sys.dim();
    let rows: IntMatrix =
        sys.polys.iter().flat_map(|p| p.relative_support()).map(|v| v.into_iter().map(BigInt::from).collect()).collect();
    let smith = smith_normal_form(&rows);
    if smith.rank < dim {
        return Err(Error::DegenerateLattice { rank: smith.rank, dim });
    }
    let basis = hermite_basis(&rows);
    let mut polys = Vec::with_capacity(sys.polys.len());
    for p in &sys.polys {
        let mut terms = vec![(p.terms[0].0, vec![0i64; dim])];
        for ((slot, _), e) in p.terms[1..].iter().zip(p.relative_support()) {
            let e: Vec<BigInt> = e.into_iter().map(BigInt::from).collect();
            let w = lattice_coordinates(&basis, &e)
                .ok_or_else(|| Error::InternalConsistency("support outside its own lattice".into()))?;
            let w = w
                .iter()
                .map(|x| x.to_i64().ok_or_else(|| Error::TooLarge("transformed exponent".into())))
                .collect::<Result<Vec<i64>>>()?;
            terms.push((*slot, w));
        }
        polys.push(AlgPoly { terms });
    }
    let vars = (1..=dim).map(|j| format!("z{j}")).collect();
    Ok(LatticeTransform { system: AlgPolySystem { vars, polys }, smith, basis })
}
