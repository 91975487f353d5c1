//! Endomorphism algebras and their local structure.
//!
//! Elements are kept as vertexwise blocks, so products, traces and
//! characteristic polynomials never touch the off-diagonal zeros.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::exactfield::poly::{charpoly, roots};
use crate::exactfield::FpMatrix;
use crate::repmod::{hom_space, Rep, RepMap};

pub type Elem = Vec<FpMatrix>;

/// End(M) with a basis of endomorphisms and a coordinate solver.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    module: Rep,
    basis: Vec<Elem>,
    /// (vertex, row, col) positions whose values determine coordinates
    pivots: Vec<(usize, usize, usize)>,
    pinv: FpMatrix,
    identity: Vec<u32>,
}

/// Outcome of inspecting End(M).
#[derive(Clone, Debug)]
pub enum Locality {
    /// End(M) is local: M is indecomposable.
    Local,
    /// A Fitting decomposition M = K ⊕ I with both parts nonzero.
    Split(Rep, Rep),
    /// End(M) is not local but no splitting element was found.
    Unsplit,
    /// The radical could not be certified and r random rounds failed to split.
    ProbablyLocal(usize),
}

impl EndAlgebra {
    pub fn new(m: &Rep) -> EndAlgebra {
        let p = m.prime();
        let hs = hom_space(m, m);
        let basis: Vec<Elem> = hs.basis.iter().map(|f| f.comps().to_vec()).collect();
        let positions: Vec<(usize, usize, usize)> = (0..m.dims().len())
            .flat_map(|v| {
                let d = m.dim_at(v);
                (0..d).flat_map(move |r| (0..d).map(move |c| (v, r, c)))
            })
            .collect();
        let rows: Vec<Vec<u32>> =
            basis.iter().map(|e| positions.iter().map(|&(v, r, c)| e[v].get(r, c)).collect()).collect();
        let vm = FpMatrix::from_rows(&rows, positions.len(), p);
        let piv_cols = vm.echelon().pivots;
        let pivots: Vec<(usize, usize, usize)> = piv_cols.iter().map(|&c| positions[c]).collect();
        let pinv = if basis.is_empty() {
            FpMatrix::zeros(0, 0, p)
        } else {
            vm.select_cols(&piv_cols).inverse().expect("pivot columns are independent")
        };
        let mut end = EndAlgebra { module: m.clone(), basis, pivots, pinv, identity: Vec::new() };
        let id: Elem = m.dims().iter().map(|&d| FpMatrix::identity(d, p)).collect();
        end.identity = end.coords(&id);
        end
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn module(&self) -> &Rep {
        &self.module
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn identity_coords(&self) -> &[u32] {
        &self.identity
    }

    pub fn as_map(&self, e: &Elem) -> RepMap {
        RepMap::unchecked(&self.module, &self.module, e.clone())
    }

    fn p(&self) -> u32 {
        self.module.prime()
    }

    pub fn coords(&self, e: &Elem) -> Vec<u32> {
        if self.basis.is_empty() {
            return Vec::new();
        }
        let x: Vec<u32> = self.pivots.iter().map(|&(v, r, c)| e[v].get(r, c)).collect();
        FpMatrix::vec_mul(&x, &self.pinv)
    }

    pub fn combine(&self, c: &[u32]) -> Elem {
        let p = self.p();
        let mut acc: Elem = self.module.dims().iter().map(|&d| FpMatrix::zeros(d, d, p)).collect();
        for (e, &x) in self.basis.iter().zip(c) {
            if x != 0 {
                for (a, b) in acc.iter_mut().zip(e) {
                    a.add_scaled(b, x);
                }
            }
        }
        acc
    }

    pub fn mul(a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| x.mul(y)).collect()
    }

    fn pow(a: &Elem, e: u64) -> Elem {
        a.iter().map(|x| x.pow(e)).collect()
    }

    /// Gram matrix of the trace form Tr_M(xy).
    fn trace_form(&self) -> FpMatrix {
        let p = self.p();
        let n = self.dim();
        let mut t = FpMatrix::zeros(n, n, p);
        for i in 0..n {
            for j in i..n {
                let v = trace_of_product(&self.basis[i], &self.basis[j], p);
                t.set(i, j, v);
                t.set(j, i, v);
            }
        }
        t
    }

    /// Coordinates (rows) of a basis of the trace radical, if it is
    /// nilpotent. The trace radical always contains rad E and is an
    /// ideal by associativity of the form, so nilpotency makes it rad E.
    /// Nilpotency is read off the chain M ⊇ RM ⊇ R²M ⊇ …, which reaches 0
    /// exactly when R does since E acts faithfully.
    fn certified_radical(&self) -> Option<FpMatrix> {
        let t = self.trace_form();
        let r = t.kernel_basis();
        let p = self.p();
        let gens: Vec<Elem> = (0..r.rows()).map(|i| self.combine(r.row(i))).collect();
        if nilpotent_on(&gens, self.module.dims(), p) {
            Some(r)
        } else {
            None
        }
    }

    /// Whether the image of E in End_k(top M) is certified local with
    /// residue field F_p. Endomorphisms inducing 0 on the top form a nil
    /// ideal, so this image has the same semisimple quotient as E.
    fn top_image_local(&self) -> bool {
        let p = self.p();
        let m = &self.module;
        let rad = m.radical_rows();
        let mut sections = Vec::new();
        let mut projections = Vec::new();
        for (v, r) in rad.iter().enumerate() {
            let s = r.row_space();
            let c = s.complement_basis();
            let inv = s.vstack(&c).inverse().expect("subspace plus complement is a basis");
            projections.push(inv.block(0, s.rows(), m.dim_at(v), c.rows()));
            sections.push(c);
        }
        let tops: Vec<usize> = sections.iter().map(|c| c.rows()).collect();
        let width: usize = tops.iter().map(|t| t * t).sum();
        let flat: Vec<Vec<u32>> = self
            .basis
            .iter()
            .map(|e| {
                let mut row = Vec::with_capacity(width);
                for v in 0..tops.len() {
                    let bar = sections[v].mul(&e[v]).mul(&projections[v]);
                    for i in 0..tops[v] {
                        row.extend_from_slice(bar.row(i));
                    }
                }
                row
            })
            .collect();
        let span = FpMatrix::from_rows(&flat, width, p).row_space();
        let image: Vec<Elem> = (0..span.rows())
            .map(|k| {
                let row = span.row(k);
                let mut off = 0;
                tops.iter()
                    .map(|&t| {
                        let rows: Vec<Vec<u32>> = (0..t).map(|i| row[off + i * t..off + (i + 1) * t].to_vec()).collect();
                        off += t * t;
                        FpMatrix::from_rows(&rows, t, p)
                    })
                    .collect()
            })
            .collect();
        let n = image.len();
        let mut gram = FpMatrix::zeros(n, n, p);
        for i in 0..n {
            for j in i..n {
                let v = trace_of_product(&image[i], &image[j], p);
                gram.set(i, j, v);
                gram.set(j, i, v);
            }
        }
        let kernel = gram.kernel_basis();
        if n - kernel.rows() != 1 {
            return false;
        }
        let gens: Vec<Elem> = (0..kernel.rows())
            .map(|k| {
                let mut acc: Elem = tops.iter().map(|&t| FpMatrix::zeros(t, t, p)).collect();
                for (i, &c) in kernel.row(k).iter().enumerate() {
                    if c != 0 {
                        for (a, b) in acc.iter_mut().zip(&image[i]) {
                            a.add_scaled(b, c);
                        }
                    }
                }
                acc
            })
            .collect();
        nilpotent_on(&gens, &tops, p)
    }

    /// Decide locality, or split.
    pub fn analyze(&self, rng: &mut ChaCha8Rng, rounds: usize) -> Locality {
        if self.dim() == 1 || self.top_image_local() {
            return Locality::Local;
        }
        match self.certified_radical() {
            Some(rad) => self.analyze_with_radical(&rad, rng, rounds),
            None => match self.random_split(rng, rounds) {
                Some(l) => l,
                None => Locality::ProbablyLocal(rounds),
            },
        }
    }

    fn analyze_with_radical(&self, rad: &FpMatrix, rng: &mut ChaCha8Rng, rounds: usize) -> Locality {
        let p = self.p();
        let comp = rad.complement_basis();
        let s = comp.rows();
        let change = rad.vstack(&comp);
        let inv = change.inverse().expect("radical plus complement spans E");
        let proj = |c: &[u32]| -> Vec<u32> {
            let full = FpMatrix::vec_mul(c, &inv);
            full[rad.rows()..].to_vec()
        };
        let lifts: Vec<Elem> = (0..s).map(|i| self.combine(comp.row(i))).collect();
        // structure constants of S = E / rad E
        let mut table: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new(); s]; s];
        for i in 0..s {
            for j in 0..s {
                table[i][j] = proj(&self.coords(&EndAlgebra::mul(&lifts[i], &lifts[j])));
            }
        }
        let commutative = (0..s).all(|i| (0..s).all(|j| table[i][j] == table[j][i]));
        let lift = |z: &[u32]| -> Elem {
            let c = FpMatrix::vec_mul(z, &comp);
            self.combine(&c)
        };
        let one = proj(&self.identity);
        if commutative {
            let frob: Vec<Vec<u32>> = lifts.iter().map(|l| proj(&self.coords(&EndAlgebra::pow(l, p as u64)))).collect();
            let f = FpMatrix::from_rows(&frob, s, p).sub(&FpMatrix::identity(s, p));
            let fixed = f.left_kernel();
            if fixed.rows() == 1 {
                return Locality::Local;
            }
            if let Some(split) = self.berlekamp_split(&fixed, &one, &lift) {
                return split;
            }
        } else {
            // center of S: z with z s_j = s_j z for every j
            let mut eqs = FpMatrix::zeros(s, 0, p);
            for j in 0..s {
                let block: Vec<Vec<u32>> = (0..s)
                    .map(|i| table[i][j].iter().zip(&table[j][i]).map(|(&a, &b)| crate::exactfield::sub_mod(a, b, p)).collect())
                    .collect();
                eqs = eqs.hstack(&FpMatrix::from_rows(&block, s, p));
            }
            let center = eqs.left_kernel();
            if center.rows() > 1 {
                let frob: Vec<Vec<u32>> = (0..center.rows())
                    .map(|i| proj(&self.coords(&EndAlgebra::pow(&lift(center.row(i)), p as u64))))
                    .collect();
                let fz = FpMatrix::from_rows(&frob, s, p);
                if let Some(fzc) = center.solve_left(&fz) {
                    let k = center.rows();
                    let fixed_c = fzc.sub(&FpMatrix::identity(k, p)).left_kernel();
                    if fixed_c.rows() > 1 {
                        let fixed = fixed_c.mul(&center);
                        if let Some(split) = self.berlekamp_split(&fixed, &one, &lift) {
                            return split;
                        }
                    }
                }
            }
        }
        self.random_split(rng, rounds.max(1)).unwrap_or(Locality::Unsplit)
    }

    fn berlekamp_split(&self, fixed: &FpMatrix, one: &[u32], lift: &dyn Fn(&[u32]) -> Elem) -> Option<Locality> {
        let p = self.p();
        let s = fixed.cols();
        let one_m = FpMatrix::from_rows(&[one.to_vec()], s, p);
        for i in 0..fixed.rows() {
            let z = fixed.row(i);
            let zm = FpMatrix::from_rows(&[z.to_vec()], s, p);
            if one_m.vstack(&zm).rank() < 2 {
                continue;
            }
            let y = lift(z);
            if let Some(l) = self.fitting_split(&y) {
                return Some(l);
            }
        }
        None
    }

    /// Try the Fitting decomposition of y − λ for every eigenvalue λ of y in F_p.
    fn fitting_split(&self, y: &Elem) -> Option<Locality> {
        let p = self.p();
        let mut lambdas: Vec<u32> = Vec::new();
        for block in y {
            if block.rows() > 0 {
                lambdas.extend(roots(&charpoly(block), p));
            }
        }
        lambdas.sort_unstable();
        lambdas.dedup();
        for lambda in lambdas {
            let h: Elem = y
                .iter()
                .map(|b| {
                    let d = b.rows();
                    b.sub(&FpMatrix::identity(d, p).scale(lambda)).pow(d as u64)
                })
                .collect();
            let f = self.as_map(&h);
            let k = f.kernel().module;
            let im = f.image().module;
            if !k.is_zero() && !im.is_zero() {
                return Some(Locality::Split(k, im));
            }
        }
        None
    }

    fn random_split(&self, rng: &mut ChaCha8Rng, rounds: usize) -> Option<Locality> {
        let p = self.p();
        for _ in 0..rounds {
            let c: Vec<u32> = (0..self.dim()).map(|_| rng.gen_range(0..p)).collect();
            if let Some(l) = self.fitting_split(&self.combine(&c)) {
                return Some(l);
            }
        }
        None
    }
}

/// Whether the span of `gens`, acting on spaces of the given dimensions,
/// generates a nilpotent ideal: the chain V ⊇ RV ⊇ R²V ⊇ … reaches 0.
fn nilpotent_on(gens: &[Elem], dims: &[usize], p: u32) -> bool {
    let mut sub: Vec<FpMatrix> = dims.iter().map(|&d| FpMatrix::identity(d, p)).collect();
    loop {
        let size: usize = sub.iter().map(|s| s.rows()).sum();
        if size == 0 {
            return true;
        }
        let next: Vec<FpMatrix> = (0..dims.len())
            .map(|v| {
                let mut rows: Vec<Vec<u32>> = Vec::new();
                if sub[v].rows() > 0 {
                    for g in gens {
                        let img = sub[v].mul(&g[v]);
                        rows.extend((0..img.rows()).map(|i| img.row(i).to_vec()));
                    }
                }
                FpMatrix::from_rows(&rows, dims[v], p).row_space()
            })
            .collect();
        if next.iter().map(|s| s.rows()).sum::<usize>() >= size {
            return false;
        }
        sub = next;
    }
}

/// Tr(xy) without forming the product.
fn trace_of_product(x: &Elem, y: &Elem, p: u32) -> u32 {
    let mut acc = 0u64;
    for (a, b) in x.iter().zip(y) {
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                acc += a.get(i, j) as u64 * b.get(j, i) as u64;
            }
            acc %= p as u64;
        }
    }
    acc as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmod::testalg::*;
    use rand::SeedableRng;

    #[test]
    fn end_dimensions() {
        let b = ex_b();
        assert_eq!(EndAlgebra::new(&Rep::simple(&b, 0)).dim(), 1);
        let s12 = Rep::sum_of(&[Rep::simple(&b, 0), Rep::simple(&b, 1)]);
        assert_eq!(EndAlgebra::new(&s12).dim(), 2);
        assert_eq!(EndAlgebra::new(&Rep::projective(&b, 0)).dim(), 2);
    }

    #[test]
    fn locality_decisions() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let b = ex_b();
        let e = EndAlgebra::new(&Rep::projective(&b, 0));
        assert!(matches!(e.analyze(&mut rng, 40), Locality::Local));
        let s11 = Rep::simple(&b, 0).power(2);
        // End = M_2(F_p): noncommutative, split found
        assert!(matches!(EndAlgebra::new(&s11).analyze(&mut rng, 40), Locality::Split(_, _)));
        let s12 = Rep::sum_of(&[Rep::simple(&b, 0), Rep::simple(&b, 1)]);
        match EndAlgebra::new(&s12).analyze(&mut rng, 40) {
            Locality::Split(k, i) => assert_eq!(k.total_dim() + i.total_dim(), 2),
            other => panic!("{other:?}"),
        }
        let a = ext_a();
        let p0 = Rep::projective(&a, 0);
        assert!(matches!(EndAlgebra::new(&p0).analyze(&mut rng, 40), Locality::Local));
    }
}
