//! Shared setting for the odd-q claims: the internal points I of the conic,
//! T = PSL(2,q), and the dihedral subgroup T_B = <α², β> of order q - 1.

use std::sync::Arc;

use crate::design::construct::InternalPoints;
use crate::error::{precondition, Result};
use crate::field::{Fe, SquareClasses};
use crate::group::action::on_points;
use crate::group::named::{alpha, beta, gamma, tau};
use crate::group::{Mat3, MatrixGroup, PermGroup};
use crate::plane::{Coords, PencilParam, PlaneCtx};

pub struct OddSetting {
    pub inner: InternalPoints,
    pub tb: MatrixGroup,
    pub xb: MatrixGroup,
    pub classes: SquareClasses,
    /// `q ≡ eps (mod 4)`.
    pub eps: i8,
}

impl OddSetting {
    pub fn new(q: u32) -> Result<Self> {
        let inner = InternalPoints::new(q)?;
        let field: Arc<_> = inner.plane.field_arc().clone();
        let k = &*field;
        let a = alpha(k);
        let tb = MatrixGroup::generate(field.clone(), &[a.mul(k, &a), beta(k)], 4 * q as usize)?;
        let xb = MatrixGroup::generate(field.clone(), &[a, beta(k)], 4 * q as usize)?;
        if tb.order() != q as usize - 1 {
            return precondition(format!("<α², β> has order {}, expected {}", tb.order(), q - 1));
        }
        let classes = k.square_classes()?;
        let eps = if q % 4 == 1 { 1 } else { -1 };
        Ok(OddSetting { inner, tb, xb, classes, eps })
    }

    pub fn plane(&self) -> &PlaneCtx {
        &self.inner.plane
    }

    pub fn q(&self) -> u32 {
        self.plane().q()
    }

    pub fn t(&self) -> &MatrixGroup {
        &self.inner.t
    }

    pub fn point(&self, x: Coords) -> u32 {
        self.plane().point_index(x)
    }

    pub fn is_internal(&self, p: u32) -> bool {
        self.inner.position(p).is_some()
    }

    /// C_h with O and P_inf removed, sorted.
    pub fn c_star(&self, h: Fe) -> Vec<u32> {
        let pl = self.plane();
        pl.punctured(&pl.pencil_conic(PencilParam::Finite(h)))
    }

    /// {(μ, 0, 1) : μ ∈ Q_sign}, sorted.
    pub fn o_inf(&self, sign: i8) -> Vec<u32> {
        let mut v: Vec<u32> = self.classes.class(sign).iter().map(|&m| self.point([m, Fe::ZERO, Fe::ONE])).collect();
        v.sort_unstable();
        v
    }

    /// {(h μ², μ, 1) : μ ∈ Q_sign}, sorted.
    pub fn o_h(&self, h: Fe, sign: i8) -> Vec<u32> {
        let k = self.plane().field();
        let mut v: Vec<u32> =
            self.classes.class(sign).iter().map(|&m| self.point([k.mul(h, k.mul(m, m)), m, Fe::ONE])).collect();
        v.sort_unstable();
        v
    }

    /// Positions in I of the given plane points, sorted; `None` if one of
    /// them is not internal.
    pub fn positions(&self, pts: &[u32]) -> Option<Vec<u32>> {
        let mut v = pts.iter().map(|&p| self.inner.position(p)).collect::<Option<Vec<_>>>()?;
        v.sort_unstable();
        Some(v)
    }

    pub fn tb_action(&self) -> Result<PermGroup> {
        on_points(self.plane(), self.tb.generators(), &self.inner.points)
    }

    /// h with h - 1 in the given class and h in the other given class;
    /// `None` for either class means no constraint.
    pub fn h_values(&self, shift: Option<i8>, target: Option<i8>) -> Vec<Fe> {
        let k = self.plane().field();
        k.nonzero()
            .filter(|&h| h != Fe::ONE)
            .filter(|&h| shift.is_none_or(|s| k.chi(k.sub(h, Fe::ONE)) == s))
            .filter(|&h| target.is_none_or(|t| k.chi(h) == t))
            .collect()
    }

    /// τ_ξ γ_c α^{2u}.
    pub fn psi(&self, xi: Fe, c: Fe, u: u32) -> Result<Mat3> {
        let k = self.plane().field();
        let a2 = alpha(k).pow(k, 2 * u as u64);
        Ok(tau(k, xi)?.mul(k, &gamma(k, c)).mul(k, &a2))
    }

    /// A canonical label for the right coset T_B x, for x anywhere in PGL(2,q).
    pub fn coset_key(&self, x: &Mat3) -> Mat3 {
        let k = self.plane().field();
        self.tb.elements().iter().map(|h| h.mul(k, x)).min().expect("T_B is nonempty")
    }

    pub fn image(&self, m: &Mat3, pts: &[u32]) -> Vec<u32> {
        let mut v: Vec<u32> = pts.iter().map(|&p| m.apply_point(self.plane(), p)).collect();
        v.sort_unstable();
        v
    }

    /// (h, m) with h - 1 ∈ Q-, h ∈ Q+, 1 <= m <= f/2, h^(p^m) != h and
    /// h^(p^2m) = h: the pairs giving mixed candidate blocks.
    pub fn mixed_pairs(&self) -> Vec<(Fe, u32)> {
        let k = self.plane().field();
        let mut out = Vec::new();
        for h in self.h_values(Some(-1), Some(1)) {
            for m in 1..=k.f() / 2 {
                let hp = k.frobenius(h, m);
                if hp != h && k.frobenius(hp, m) == h {
                    out.push((h, m));
                }
            }
        }
        out
    }
}
