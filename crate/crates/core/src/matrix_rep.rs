//! Explicit representations of `1 -> 2 -> ... -> n` over a prime field.
//!
//! A [`MatrixRep`] stores one vector-space dimension per vertex and one matrix
//! per arrow; a [`Morphism`] stores one matrix per vertex and is checked for
//! commutativity on construction. Everything here is decided by exact linear
//! algebra, independently of the closed-form rules in [`crate::interval`], so
//! the two can be compared against each other.
//!
//! Vertices are 1-based in the public API. `maps()[q]` is the arrow from
//! vertex `q+1` to vertex `q+2`, of shape `dims[q+1] x dims[q]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::interval::{Interval, Rep};
use crate::linalg::Matrix;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MatrixRep<F> {
    dims: Vec<usize>,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> MatrixRep<F> {
    pub fn new(dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidRank(0));
        }
        if maps.len() != dims.len() - 1 {
            return Err(Error::Shape(format!(
                "{} vertices need {} arrow matrices, got {}",
                dims.len(),
                dims.len() - 1,
                maps.len()
            )));
        }
        for (q, m) in maps.iter().enumerate() {
            if m.shape() != (dims[q + 1], dims[q]) {
                return Err(Error::Shape(format!(
                    "arrow {} -> {} has shape {:?}, expected {:?}",
                    q + 1,
                    q + 2,
                    m.shape(),
                    (dims[q + 1], dims[q])
                )));
            }
        }
        Ok(MatrixRep { dims, maps })
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "rank must be at least 1");
        MatrixRep {
            dims: vec![0; n],
            maps: vec![Matrix::zeros(0, 0); n - 1],
        }
    }

    /// `E^{ij}`: one-dimensional on `i..=j` with identity maps between.
    pub fn interval(x: Interval) -> Self {
        let dims = x.dim_vector();
        let maps = (0..dims.len() - 1)
            .map(|q| {
                let mut m = Matrix::zeros(dims[q + 1], dims[q]);
                if dims[q] == 1 && dims[q + 1] == 1 {
                    m[(0, 0)] = F::one();
                }
                m
            })
            .collect();
        MatrixRep { dims, maps }
    }

    pub fn build_interval(n: usize, i: usize, j: usize) -> Result<Self> {
        Ok(Self::interval(Interval::new(n, i, j)?))
    }

    /// The direct sum of the summands of `rep`, taken in canonical order.
    pub fn from_rep(rep: &Rep) -> Self {
        rep.summands().fold(Self::zero(rep.rank()), |acc, x| {
            acc.direct_sum(&Self::interval(x)).expect("same rank")
        })
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension at 1-based `vertex`.
    pub fn dim(&self, vertex: usize) -> usize {
        self.dims[vertex - 1]
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank(), other.rank())?;
        let dims = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a + b)
            .collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Ok(MatrixRep { dims, maps })
    }

    /// The composite of the arrows from vertex `from` to vertex `to`
    /// (1-based, `from <= to`); the identity when they coincide.
    pub fn composite(&self, from: usize, to: usize) -> Matrix<F> {
        assert!(1 <= from && from <= to && to <= self.rank());
        let mut m = Matrix::identity(self.dim(from));
        for q in from..to {
            m = &self.maps[q - 1] * &m;
        }
        m
    }

    /// Multiset of interval summands, computed from ranks of composite maps:
    /// `mult(i,j) = r(i,j) - r(i-1,j) - r(i,j+1) + r(i-1,j+1)`.
    #[allow(clippy::needless_range_loop)]
    pub fn decompose(&self) -> Rep {
        let n = self.rank();
        // r[i][j] for 1 <= i <= j <= n; zero outside.
        let mut r = vec![vec![0i64; n + 2]; n + 2];
        for i in 1..=n {
            let mut m = Matrix::identity(self.dim(i));
            r[i][i] = self.dim(i) as i64;
            for j in i + 1..=n {
                m = &self.maps[j - 2] * &m;
                r[i][j] = m.rank() as i64;
            }
        }
        let mut rep = Rep::zero(n);
        for i in 1..=n {
            for j in i..=n {
                let mult = r[i][j] - r[i - 1][j] - r[i][j + 1] + r[i - 1][j + 1];
                debug_assert!(mult >= 0, "negative multiplicity at ({i},{j})");
                let x = Interval::new(n, i, j).expect("valid");
                for _ in 0..mult {
                    rep.push(x).expect("same rank");
                }
            }
        }
        rep
    }

    pub fn to_data(&self) -> MatrixRepData {
        MatrixRepData {
            rank: self.rank(),
            prime: F::CHARACTERISTIC,
            dims: self.dims.clone(),
            maps: self
                .maps
                .iter()
                .map(|m| {
                    m.entries()
                        .iter()
                        .map(|x| x.to_u64().expect("residue"))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_data(data: &MatrixRepData) -> Result<Self> {
        if data.prime != F::CHARACTERISTIC {
            return Err(Error::FieldMismatch {
                left: F::CHARACTERISTIC,
                right: data.prime,
            });
        }
        if data.dims.len() != data.rank {
            return Err(Error::Shape(format!(
                "rank {} but {} dims",
                data.rank,
                data.dims.len()
            )));
        }
        if data.maps.len() + 1 != data.rank {
            return Err(Error::Shape(format!(
                "rank {} needs {} maps, got {}",
                data.rank,
                data.rank.saturating_sub(1),
                data.maps.len()
            )));
        }
        let mut maps = Vec::with_capacity(data.maps.len());
        for (q, entries) in data.maps.iter().enumerate() {
            let (rows, cols) = (data.dims[q + 1], data.dims[q]);
            if entries.len() != rows * cols {
                return Err(Error::Shape(format!(
                    "arrow {} -> {} needs {} entries, got {}",
                    q + 1,
                    q + 2,
                    rows * cols,
                    entries.len()
                )));
            }
            let vals = entries
                .iter()
                .map(|&v| F::from_u64(v).expect("residue"))
                .collect();
            maps.push(Matrix::from_vec(rows, cols, vals));
        }
        MatrixRep::new(data.dims.clone(), maps)
    }
}

/// Serialized form of a [`MatrixRep`]: row-major entries per arrow, reduced
/// modulo `prime` on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRepData {
    pub rank: usize,
    pub prime: u32,
    pub dims: Vec<usize>,
    pub maps: Vec<Vec<u64>>,
}

fn check_rank(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::RankMismatch { left, right })
    }
}

/// A morphism of representations: one block per vertex, commuting with
/// every arrow.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Morphism<F> {
    source: MatrixRep<F>,
    target: MatrixRep<F>,
    blocks: Vec<Matrix<F>>,
}

impl<F: Field> Morphism<F> {
    pub fn new(source: MatrixRep<F>, target: MatrixRep<F>, blocks: Vec<Matrix<F>>) -> Result<Self> {
        check_rank(source.rank(), target.rank())?;
        if blocks.len() != source.rank() {
            return Err(Error::Shape(format!(
                "{} blocks for rank {}",
                blocks.len(),
                source.rank()
            )));
        }
        for (q, b) in blocks.iter().enumerate() {
            if b.shape() != (target.dims[q], source.dims[q]) {
                return Err(Error::Shape(format!(
                    "block at vertex {} has shape {:?}, expected {:?}",
                    q + 1,
                    b.shape(),
                    (target.dims[q], source.dims[q])
                )));
            }
        }
        for q in 0..source.rank() - 1 {
            let lhs = &target.maps[q] * &blocks[q];
            let rhs = &blocks[q + 1] * &source.maps[q];
            if lhs != rhs {
                return Err(Error::NotCommutative { arrow: q + 1 });
            }
        }
        Ok(Morphism {
            source,
            target,
            blocks,
        })
    }

    pub fn identity(rep: &MatrixRep<F>) -> Self {
        let blocks = rep.dims.iter().map(|&d| Matrix::identity(d)).collect();
        Morphism {
            source: rep.clone(),
            target: rep.clone(),
            blocks,
        }
    }

    pub fn zero(source: &MatrixRep<F>, target: &MatrixRep<F>) -> Result<Self> {
        check_rank(source.rank(), target.rank())?;
        let blocks = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| Matrix::zeros(t, s))
            .collect();
        Ok(Morphism {
            source: source.clone(),
            target: target.clone(),
            blocks,
        })
    }

    pub fn source(&self) -> &MatrixRep<F> {
        &self.source
    }

    pub fn target(&self) -> &MatrixRep<F> {
        &self.target
    }

    pub fn blocks(&self) -> &[Matrix<F>] {
        &self.blocks
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Morphism<F>) -> Result<Self> {
        if first.target != self.source {
            return Err(Error::Shape(
                "composition of non-composable morphisms".into(),
            ));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&first.blocks)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Morphism {
            source: first.source.clone(),
            target: self.target.clone(),
            blocks,
        })
    }

    pub fn add(&self, other: &Morphism<F>) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("sum of morphisms with different ends".into()));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks,
        })
    }

    pub fn scale(&self, s: F) -> Self {
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(s)).collect(),
        }
    }

    /// `[self, other] : A ⊕ B -> C` for `self : A -> C`, `other : B -> C`.
    pub fn copair(&self, other: &Morphism<F>) -> Result<Self> {
        if self.target != other.target {
            return Err(Error::Shape(
                "copair of morphisms with different targets".into(),
            ));
        }
        let source = self.source.direct_sum(&other.source)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.hstack(b))
            .collect();
        Morphism::new(source, self.target.clone(), blocks)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    /// First 1-based vertex where the block is not injective.
    pub fn non_injective_vertex(&self) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.rank() != b.cols())
            .map(|q| q + 1)
    }

    /// First 1-based vertex where the block is not surjective.
    pub fn non_surjective_vertex(&self) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.rank() != b.rows())
            .map(|q| q + 1)
    }

    pub fn is_injective(&self) -> bool {
        self.non_injective_vertex().is_none()
    }

    pub fn is_surjective(&self) -> bool {
        self.non_surjective_vertex().is_none()
    }

    fn require_injective(&self) -> Result<()> {
        match self.non_injective_vertex() {
            Some(vertex) => Err(Error::NotInjective { vertex }),
            None => Ok(()),
        }
    }

    fn require_surjective(&self) -> Result<()> {
        match self.non_surjective_vertex() {
            Some(vertex) => Err(Error::NotSurjective { vertex }),
            None => Ok(()),
        }
    }
}

/// Linear system whose unknowns are matrices, one per vertex.
struct BlockSystem<F> {
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    unknowns: usize,
    rows: Vec<Vec<F>>,
    rhs: Vec<F>,
}

enum Term<'a, F> {
    /// `m * S_v`
    Left(&'a Matrix<F>, usize, F),
    /// `S_v * m`
    Right(usize, &'a Matrix<F>, F),
}

impl<F: Field> BlockSystem<F> {
    fn new(shapes: Vec<(usize, usize)>) -> Self {
        let mut offsets = Vec::with_capacity(shapes.len());
        let mut acc = 0;
        for &(r, c) in &shapes {
            offsets.push(acc);
            acc += r * c;
        }
        BlockSystem {
            shapes,
            offsets,
            unknowns: acc,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    fn var(&self, v: usize, r: usize, c: usize) -> usize {
        self.offsets[v] + r * self.shapes[v].1 + c
    }

    /// Adds one scalar equation per entry of `sum(terms) = rhs`.
    fn equate(&mut self, terms: &[Term<'_, F>], rhs: &Matrix<F>) {
        let (out_rows, out_cols) = rhs.shape();
        for r in 0..out_rows {
            for c in 0..out_cols {
                let mut row = vec![F::zero(); self.unknowns];
                for term in terms {
                    match *term {
                        Term::Left(m, v, coef) => {
                            for k in 0..m.cols() {
                                let idx = self.var(v, k, c);
                                row[idx] = row[idx] + coef * m[(r, k)];
                            }
                        }
                        Term::Right(v, m, coef) => {
                            for k in 0..m.rows() {
                                let idx = self.var(v, r, k);
                                row[idx] = row[idx] + coef * m[(k, c)];
                            }
                        }
                    }
                }
                self.rows.push(row);
                self.rhs.push(rhs[(r, c)]);
            }
        }
    }

    fn matrix(&self) -> Matrix<F> {
        Matrix::from_vec(
            self.rows.len(),
            self.unknowns,
            self.rows.iter().flatten().copied().collect(),
        )
    }

    fn rhs(&self) -> Matrix<F> {
        Matrix::column(&self.rhs)
    }

    fn unflatten(&self, x: &[F]) -> Vec<Matrix<F>> {
        self.shapes
            .iter()
            .zip(&self.offsets)
            .map(|(&(r, c), &off)| Matrix::from_vec(r, c, x[off..off + r * c].to_vec()))
            .collect()
    }
}

fn hom_system<F: Field>(src: &MatrixRep<F>, dst: &MatrixRep<F>) -> BlockSystem<F> {
    let shapes = src
        .dims
        .iter()
        .zip(&dst.dims)
        .map(|(&s, &d)| (d, s))
        .collect();
    let mut sys = BlockSystem::new(shapes);
    let minus = -F::one();
    for q in 0..src.rank() - 1 {
        let zero = Matrix::zeros(dst.dims[q + 1], src.dims[q]);
        sys.equate(
            &[
                Term::Left(&dst.maps[q], q, F::one()),
                Term::Right(q + 1, &src.maps[q], minus),
            ],
            &zero,
        );
    }
    sys
}

/// `dim Hom(src, dst)`, from the nullity of the commutativity system.
pub fn hom_space_dim<F: Field>(src: &MatrixRep<F>, dst: &MatrixRep<F>) -> Result<usize> {
    check_rank(src.rank(), dst.rank())?;
    let sys = hom_system(src, dst);
    Ok(sys.unknowns - sys.matrix().rank())
}

/// A basis of `Hom(src, dst)`.
pub fn hom_basis<F: Field>(src: &MatrixRep<F>, dst: &MatrixRep<F>) -> Result<Vec<Morphism<F>>> {
    check_rank(src.rank(), dst.rank())?;
    let sys = hom_system(src, dst);
    let kernel = sys.matrix().nullspace();
    (0..kernel.cols())
        .map(|c| Morphism::new(src.clone(), dst.clone(), sys.unflatten(&kernel.col(c))))
        .collect()
}

/// Largest Hom space that [`surjection_exists`] will enumerate.
pub const SURJECTION_SEARCH_LIMIT: u64 = 1 << 20;

/// Whether some morphism `src -> dst` is surjective, by enumerating every
/// element of `Hom(src, dst)`.
pub fn surjection_exists<F: Field>(src: &MatrixRep<F>, dst: &MatrixRep<F>) -> Result<bool> {
    let basis = hom_basis(src, dst)?;
    let size = (F::CHARACTERISTIC as u64).checked_pow(basis.len() as u32);
    match size {
        Some(s) if s <= SURJECTION_SEARCH_LIMIT => {}
        _ => {
            return Err(Error::TooLarge {
                n: basis.len(),
                bound: SURJECTION_SEARCH_LIMIT.ilog(F::CHARACTERISTIC as u64) as usize,
            })
        }
    }
    let mut found = false;
    for_each_coefficients::<F>(basis.len(), |coeffs| {
        let mut f = Morphism::zero(src, dst).expect("same rank");
        for (b, &c) in basis.iter().zip(coeffs) {
            f = f.add(&b.scale(c)).expect("same ends");
        }
        found = f.is_surjective();
        found
    });
    Ok(found)
}

/// Calls `visit` on every coefficient vector in `F^len` until it returns true.
fn for_each_coefficients<F: Field>(len: usize, mut visit: impl FnMut(&[F]) -> bool) {
    let elements = F::elements();
    let mut digits = vec![0usize; len];
    loop {
        let coeffs: Vec<F> = digits.iter().map(|&d| elements[d]).collect();
        if visit(&coeffs) {
            return;
        }
        let mut k = 0;
        loop {
            if k == len {
                return;
            }
            digits[k] += 1;
            if digits[k] < elements.len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// The subrepresentation of `y` generated by `vector` at 1-based `vertex`,
/// with its inclusion into `y`.
pub fn subrep_generated<F: Field>(
    y: &MatrixRep<F>,
    vertex: usize,
    vector: &[F],
) -> Result<(MatrixRep<F>, Morphism<F>)> {
    let n = y.rank();
    if !(1..=n).contains(&vertex) {
        return Err(Error::VertexOutOfRange { vertex, n });
    }
    if vector.len() != y.dim(vertex) {
        return Err(Error::Shape(format!(
            "vector of length {} at vertex {vertex} of dimension {}",
            vector.len(),
            y.dim(vertex)
        )));
    }
    // Walks only go rightward, so the image at each later vertex is spanned
    // by a single vector.
    let mut images: Vec<Option<Matrix<F>>> = vec![None; n];
    let mut current = Matrix::column(vector);
    for q in vertex..=n {
        if current.is_zero() {
            break;
        }
        images[q - 1] = Some(current.clone());
        if q < n {
            current = &y.maps[q - 1] * &current;
        }
    }
    let dims: Vec<usize> = images.iter().map(|v| usize::from(v.is_some())).collect();
    let sub = MatrixRep::interval_like(&dims);
    let blocks = images
        .iter()
        .enumerate()
        .map(|(q, v)| v.clone().unwrap_or_else(|| Matrix::zeros(y.dims[q], 0)))
        .collect();
    let inclusion = Morphism::new(sub.clone(), y.clone(), blocks)?;
    Ok((sub, inclusion))
}

impl<F: Field> MatrixRep<F> {
    /// 0/1 dimensions with identity maps wherever both ends are nonzero.
    fn interval_like(dims: &[usize]) -> Self {
        let maps = dims
            .windows(2)
            .map(|w| {
                let mut m = Matrix::zeros(w[1], w[0]);
                if w[0] == 1 && w[1] == 1 {
                    m[(0, 0)] = F::one();
                }
                m
            })
            .collect();
        MatrixRep {
            dims: dims.to_vec(),
            maps,
        }
    }
}

/// Whether the injection `inclusion : X -> Y` splits, i.e. some `s : Y -> X`
/// has `s ∘ inclusion = id_X`.
pub fn split_exists<F: Field>(inclusion: &Morphism<F>) -> Result<bool> {
    inclusion.require_injective()?;
    let x = &inclusion.source;
    let y = &inclusion.target;
    let shapes = x.dims.iter().zip(&y.dims).map(|(&a, &b)| (a, b)).collect();
    let mut sys = BlockSystem::new(shapes);
    let minus = -F::one();
    for q in 0..x.rank() - 1 {
        let zero = Matrix::zeros(x.dims[q + 1], y.dims[q]);
        sys.equate(
            &[
                Term::Left(&x.maps[q], q, F::one()),
                Term::Right(q + 1, &y.maps[q], minus),
            ],
            &zero,
        );
    }
    for q in 0..x.rank() {
        sys.equate(
            &[Term::Right(q, &inclusion.blocks[q], F::one())],
            &Matrix::identity(x.dims[q]),
        );
    }
    Ok(sys.matrix().solve(&sys.rhs()).is_some())
}

/// Cokernel of an injection: `Y/X` with the projection `Y -> Y/X`.
pub fn quotient<F: Field>(inclusion: &Morphism<F>) -> Result<(MatrixRep<F>, Morphism<F>)> {
    inclusion.require_injective()?;
    let y = &inclusion.target;
    let proj: Vec<Matrix<F>> = inclusion.blocks.iter().map(Matrix::cokernel_map).collect();
    let mut maps = Vec::with_capacity(y.rank() - 1);
    for q in 0..y.rank() - 1 {
        let section = proj[q]
            .solve(&Matrix::identity(proj[q].rows()))
            .expect("cokernel map has full row rank");
        maps.push(&(&proj[q + 1] * &y.maps[q]) * &section);
    }
    let dims = proj.iter().map(Matrix::rows).collect();
    let z = MatrixRep::new(dims, maps)?;
    let g = Morphism::new(y.clone(), z.clone(), proj)?;
    Ok((z, g))
}

/// Kernel of a morphism with its inclusion.
pub fn kernel<F: Field>(g: &Morphism<F>) -> Result<(MatrixRep<F>, Morphism<F>)> {
    let y = &g.source;
    let basis: Vec<Matrix<F>> = g.blocks.iter().map(Matrix::nullspace).collect();
    let mut maps = Vec::with_capacity(y.rank() - 1);
    for q in 0..y.rank() - 1 {
        let image = &y.maps[q] * &basis[q];
        maps.push(
            basis[q + 1]
                .solve(&image)
                .expect("kernel is a subrepresentation"),
        );
    }
    let dims = basis.iter().map(Matrix::cols).collect();
    let x = MatrixRep::new(dims, maps)?;
    let inc = Morphism::new(x.clone(), y.clone(), basis)?;
    Ok((x, inc))
}

/// A short exact sequence `0 -> X -> Y -> Z -> 0`: `Y` is an extension of
/// `Z` by `X`.
#[derive(Clone, Debug)]
pub struct Extension<F> {
    inclusion: Morphism<F>,
    projection: Morphism<F>,
}

impl<F: Field> Extension<F> {
    /// Checks injectivity, surjectivity and exactness in the middle.
    pub fn new(inclusion: Morphism<F>, projection: Morphism<F>) -> Result<Self> {
        if inclusion.target != projection.source {
            return Err(Error::Shape(
                "inclusion and projection do not compose".into(),
            ));
        }
        inclusion.require_injective()?;
        projection.require_surjective()?;
        if let Some(vertex) = exactness_failure(&inclusion, &projection) {
            return Err(Error::NotExact { vertex });
        }
        Ok(Extension {
            inclusion,
            projection,
        })
    }

    pub fn from_inclusion(inclusion: Morphism<F>) -> Result<Self> {
        let (_, projection) = quotient(&inclusion)?;
        Extension::new(inclusion, projection)
    }

    pub fn from_projection(projection: Morphism<F>) -> Result<Self> {
        let (_, inclusion) = kernel(&projection)?;
        Extension::new(inclusion, projection)
    }

    /// The extension with `Y_q = X_q ⊕ Z_q` and arrows
    /// `[[X_a, c_q], [0, Z_a]]`, where `c_q : Z_q -> X_{q+1}`.
    ///
    /// Every extension of `Z` by `X` is isomorphic to one of these.
    pub fn from_cocycle(
        quotient: &MatrixRep<F>,
        sub: &MatrixRep<F>,
        cocycle: &[Matrix<F>],
    ) -> Result<Self> {
        check_rank(quotient.rank(), sub.rank())?;
        let shapes = cocycle_shapes(quotient, sub);
        if cocycle.len() != shapes.len()
            || cocycle.iter().zip(&shapes).any(|(c, &s)| c.shape() != s)
        {
            return Err(Error::Shape("cocycle blocks have wrong shapes".into()));
        }
        let (x, z) = (sub, quotient);
        let dims: Vec<usize> = x.dims.iter().zip(&z.dims).map(|(a, b)| a + b).collect();
        let maps = (0..x.rank() - 1)
            .map(|q| {
                let mut m = x.maps[q].block_diag(&z.maps[q]);
                m.set_block(0, x.dims[q], &cocycle[q]);
                m
            })
            .collect();
        let y = MatrixRep::new(dims, maps)?;
        let inc_blocks = (0..x.rank())
            .map(|q| Matrix::identity(x.dims[q]).vstack(&Matrix::zeros(z.dims[q], x.dims[q])))
            .collect();
        let proj_blocks = (0..x.rank())
            .map(|q| Matrix::zeros(z.dims[q], x.dims[q]).hstack(&Matrix::identity(z.dims[q])))
            .collect();
        let inclusion = Morphism::new(x.clone(), y.clone(), inc_blocks)?;
        let projection = Morphism::new(y, z.clone(), proj_blocks)?;
        Extension::new(inclusion, projection)
    }

    pub fn sub(&self) -> &MatrixRep<F> {
        &self.inclusion.source
    }

    pub fn middle(&self) -> &MatrixRep<F> {
        &self.inclusion.target
    }

    pub fn quotient(&self) -> &MatrixRep<F> {
        &self.projection.target
    }

    pub fn inclusion(&self) -> &Morphism<F> {
        &self.inclusion
    }

    pub fn projection(&self) -> &Morphism<F> {
        &self.projection
    }

    /// Trivial extensions are exactly the split ones.
    pub fn is_split(&self) -> bool {
        split_exists(&self.inclusion).expect("inclusion is injective")
    }
}

/// First vertex where `ker(projection) != im(inclusion)`.
fn exactness_failure<F: Field>(inclusion: &Morphism<F>, projection: &Morphism<F>) -> Option<usize> {
    (0..inclusion.blocks.len()).find_map(|q| {
        let composite = &projection.blocks[q] * &inclusion.blocks[q];
        let dim = inclusion.target.dims[q];
        let exact =
            composite.is_zero() && inclusion.blocks[q].rank() + projection.blocks[q].rank() == dim;
        (!exact).then_some(q + 1)
    })
}

/// Shapes of the cocycle blocks `c_q : Z_q -> X_{q+1}`.
pub fn cocycle_shapes<F: Field>(
    quotient: &MatrixRep<F>,
    sub: &MatrixRep<F>,
) -> Vec<(usize, usize)> {
    (0..sub.rank() - 1)
        .map(|q| (sub.dims[q + 1], quotient.dims[q]))
        .collect()
}

/// Largest number of cocycles [`all_extensions`] will enumerate.
pub const EXTENSION_SEARCH_LIMIT: u64 = 1 << 16;

/// Every block-triangular extension of `quotient` by `sub`, one per cocycle.
pub fn all_extensions<F: Field>(
    quotient: &MatrixRep<F>,
    sub: &MatrixRep<F>,
) -> Result<Vec<Extension<F>>> {
    check_rank(quotient.rank(), sub.rank())?;
    let shapes = cocycle_shapes(quotient, sub);
    let entries: usize = shapes.iter().map(|&(r, c)| r * c).sum();
    match (F::CHARACTERISTIC as u64).checked_pow(entries as u32) {
        Some(s) if s <= EXTENSION_SEARCH_LIMIT => {}
        _ => {
            return Err(Error::TooLarge {
                n: entries,
                bound: EXTENSION_SEARCH_LIMIT.ilog(F::CHARACTERISTIC as u64) as usize,
            })
        }
    }
    let mut out = Vec::new();
    let mut failure = None;
    for_each_coefficients::<F>(entries, |coeffs| {
        let mut it = coeffs.iter().copied();
        let cocycle: Vec<Matrix<F>> = shapes
            .iter()
            .map(|&(r, c)| Matrix::from_vec(r, c, it.by_ref().take(r * c).collect()))
            .collect();
        match Extension::from_cocycle(quotient, sub, &cocycle) {
            Ok(e) => out.push(e),
            Err(e) => failure = Some(e),
        }
        failure.is_some()
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Whether some extension of `quotient` by `sub` fails to split.
pub fn nontrivial_extension_exists<F: Field>(
    quotient: &MatrixRep<F>,
    sub: &MatrixRep<F>,
) -> Result<bool> {
    Ok(all_extensions(quotient, sub)?.iter().any(|e| !e.is_split()))
}

/// Embeds `E^{kl}` into `middle` by sending its basis vector at each vertex
/// to the sum of the basis vectors of all summands supported there.
pub fn diagonal_embedding<F: Field>(x: Interval, middle: &Rep) -> Result<Morphism<F>> {
    let src = MatrixRep::interval(x);
    let dst = MatrixRep::from_rep(middle);
    let blocks = (1..=x.rank())
        .map(|q| {
            let cols = src.dim(q);
            let rows = dst.dim(q);
            let mut m = Matrix::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    m[(r, c)] = F::one();
                }
            }
            m
        })
        .collect();
    Morphism::new(src, dst, blocks)
}

/// The pullback of an extension along a surjection, with its three
/// structure maps.
#[derive(Clone, Debug)]
pub struct Pullback<F> {
    /// `0 -> X -> Y' -> Z' -> 0`
    pub extension: Extension<F>,
    /// The surjection `Y' -> Y`.
    pub to_middle: Morphism<F>,
}

/// Pulls back `ext` (an extension of `Z` by `X`) along the surjection
/// `cover : Z' -> Z`, building `Y'_q = {(y, z') : g(y) = h(z')}` fiberwise.
pub fn pullback<F: Field>(ext: &Extension<F>, cover: &Morphism<F>) -> Result<Pullback<F>> {
    if cover.target != *ext.quotient() {
        return Err(Error::Shape("cover does not land in the quotient".into()));
    }
    cover.require_surjective()?;
    let y = ext.middle();
    let zp = &cover.source;
    let g = &ext.projection;
    let n = y.rank();

    let fibers: Vec<Matrix<F>> = (0..n)
        .map(|q| {
            g.blocks[q]
                .hstack(&cover.blocks[q].scale(-F::one()))
                .nullspace()
        })
        .collect();
    let mut maps = Vec::with_capacity(n - 1);
    for q in 0..n - 1 {
        let arrow = y.maps[q].block_diag(&zp.maps[q]);
        let image = &arrow * &fibers[q];
        maps.push(
            fibers[q + 1]
                .solve(&image)
                .ok_or(Error::NotCommutative { arrow: q + 1 })?,
        );
    }
    let dims = fibers.iter().map(Matrix::cols).collect();
    let yp = MatrixRep::new(dims, maps)?;

    let inc_blocks = (0..n)
        .map(|q| {
            let pair =
                ext.inclusion.blocks[q].vstack(&Matrix::zeros(zp.dims[q], ext.sub().dims[q]));
            fibers[q]
                .solve(&pair)
                .ok_or(Error::NotExact { vertex: q + 1 })
        })
        .collect::<Result<Vec<_>>>()?;
    let to_cover_blocks = (0..n)
        .map(|q| fibers[q].block(y.dims[q], 0, zp.dims[q], fibers[q].cols()))
        .collect();
    let to_middle_blocks = (0..n)
        .map(|q| fibers[q].block(0, 0, y.dims[q], fibers[q].cols()))
        .collect();

    let inclusion = Morphism::new(ext.sub().clone(), yp.clone(), inc_blocks)?;
    let to_cover = Morphism::new(yp.clone(), zp.clone(), to_cover_blocks)?;
    let to_middle = Morphism::new(yp, y.clone(), to_middle_blocks)?;
    Ok(Pullback {
        extension: Extension::new(inclusion, to_cover)?,
        to_middle,
    })
}

impl<F: Field> Pullback<F> {
    /// Re-checks every structural property independently of construction:
    /// `X -> Y'` injective, `ker(Y' -> Z') = im(X)`, `Y' -> Z'` and
    /// `Y' -> Y` surjective, and the square `g ∘ to_middle = h ∘ to_cover`
    /// commutes. Returns a description of the first failure.
    pub fn check(
        &self,
        ext: &Extension<F>,
        cover: &Morphism<F>,
    ) -> std::result::Result<(), String> {
        let inc = self.extension.inclusion();
        let to_cover = self.extension.projection();
        if let Some(v) = inc.non_injective_vertex() {
            return Err(format!("inclusion of X not injective at vertex {v}"));
        }
        if let Some(v) = to_cover.non_surjective_vertex() {
            return Err(format!("map to Z' not surjective at vertex {v}"));
        }
        if let Some(v) = exactness_failure(inc, to_cover) {
            return Err(format!(
                "kernel of map to Z' differs from image of X at vertex {v}"
            ));
        }
        if let Some(v) = self.to_middle.non_surjective_vertex() {
            return Err(format!("map to Y not surjective at vertex {v}"));
        }
        let left = ext
            .projection()
            .after(&self.to_middle)
            .map_err(|e| e.to_string())?;
        let right = cover.after(to_cover).map_err(|e| e.to_string())?;
        if left != right {
            return Err("pullback square does not commute".into());
        }
        let restricted = self.to_middle.after(inc).map_err(|e| e.to_string())?;
        if restricted != *ext.inclusion() {
            return Err("X -> Y' -> Y differs from X -> Y".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf;
    use crate::interval::{all_intervals, hom_dim};

    type F2 = Gf<2>;
    type F5 = Gf<5>;

    fn e<F: Field>(n: usize, i: usize, j: usize) -> MatrixRep<F> {
        MatrixRep::build_interval(n, i, j).unwrap()
    }

    fn iv(n: usize, i: usize, j: usize) -> Interval {
        Interval::new(n, i, j).unwrap()
    }

    fn m2(rows: &[&[u64]]) -> Matrix<F2> {
        Matrix::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&v| F2::new(v)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn build_interval_examples() {
        let x = e::<F2>(2, 1, 2);
        assert_eq!(x.dims(), &[1, 1]);
        assert_eq!(x.maps()[0], m2(&[&[1]]));
        let s = e::<F2>(3, 2, 2);
        assert_eq!(s.dims(), &[0, 1, 0]);
        let full = e::<F2>(3, 1, 3);
        assert_eq!(full.dims(), &[1, 1, 1]);
        assert!(full.maps().iter().all(|m| *m == m2(&[&[1]])));
        assert!(MatrixRep::<F2>::build_interval(3, 3, 2).is_err());
    }

    #[test]
    fn direct_sum_examples() {
        let s = e::<F2>(2, 1, 1).direct_sum(&e(2, 2, 2)).unwrap();
        assert_eq!(s.dims(), &[1, 1]);
        assert_eq!(s.maps()[0], m2(&[&[0]]));

        let x = e::<F2>(3, 1, 2);
        assert_eq!(x.direct_sum(&MatrixRep::zero(3)).unwrap(), x);

        let d = e::<F2>(2, 1, 2).direct_sum(&e(2, 1, 2)).unwrap();
        assert_eq!(d.dims(), &[2, 2]);
        assert_eq!(d.maps()[0], Matrix::identity(2));

        assert!(x.direct_sum(&MatrixRep::zero(2)).is_err());
    }

    #[test]
    fn hom_examples() {
        assert_eq!(hom_space_dim(&e::<F2>(3, 1, 3), &e(3, 1, 2)).unwrap(), 1);
        assert_eq!(
            hom_space_dim(&MatrixRep::<F2>::zero(3), &e(3, 1, 2)).unwrap(),
            0
        );
        assert_eq!(hom_space_dim(&e::<F2>(2, 1, 2), &e(2, 1, 2)).unwrap(), 1);
    }

    #[test]
    fn hom_matches_interval_rule_for_rank_four_gf5() {
        for x in all_intervals(4) {
            for y in all_intervals(4) {
                let mx = MatrixRep::<F5>::interval(x);
                let my = MatrixRep::<F5>::interval(y);
                assert_eq!(
                    hom_space_dim(&mx, &my).unwrap(),
                    hom_dim(x, y).unwrap(),
                    "{x:?} {y:?}"
                );
            }
        }
    }

    #[test]
    fn hom_basis_elements_are_morphisms() {
        let src =
            MatrixRep::<F5>::from_rep(&Rep::from_intervals(3, [iv(3, 1, 3), iv(3, 2, 3)]).unwrap());
        let dst =
            MatrixRep::<F5>::from_rep(&Rep::from_intervals(3, [iv(3, 1, 2), iv(3, 2, 2)]).unwrap());
        let basis = hom_basis(&src, &dst).unwrap();
        // E13 -> E12, E23 -> E12, E23 -> E22
        assert_eq!(basis.len(), 3);
        assert!(basis.iter().all(|f| !f.is_zero()));
    }

    #[test]
    fn subrep_generated_examples() {
        let y = e::<F2>(3, 1, 3);
        let (t, inc) = subrep_generated(&y, 1, &[F2::new(1)]).unwrap();
        assert_eq!(t, y);
        assert!(inc.is_injective() && inc.is_surjective());

        let (t, inc) = subrep_generated(&y, 2, &[F2::new(1)]).unwrap();
        assert_eq!(
            t.decompose(),
            Rep::from_intervals(3, [iv(3, 2, 3)]).unwrap()
        );
        assert!(inc.is_injective());

        let (t, _) = subrep_generated(&y, 3, &[F2::new(0)]).unwrap();
        assert!(t.is_zero());

        assert!(subrep_generated(&y, 1, &[]).is_err());
        assert!(subrep_generated(&y, 4, &[F2::new(1)]).is_err());
    }

    #[test]
    fn split_examples() {
        // E12 as an extension of E11 by E22.
        let inc =
            diagonal_embedding::<F2>(iv(2, 2, 2), &Rep::from_intervals(2, [iv(2, 1, 2)]).unwrap())
                .unwrap();
        assert!(!split_exists(&inc).unwrap());

        // X ⊕ Z with the canonical inclusion splits.
        let x = e::<F2>(3, 2, 3);
        let z = e::<F2>(3, 1, 2);
        let zero_cocycle: Vec<_> = cocycle_shapes(&z, &x)
            .into_iter()
            .map(|(r, c)| Matrix::zeros(r, c))
            .collect();
        let ext = Extension::from_cocycle(&z, &x, &zero_cocycle).unwrap();
        assert!(ext.is_split());

        // E13 ⊕ E22 containing E23 diagonally.
        let middle = Rep::from_intervals(3, [iv(3, 1, 3), iv(3, 2, 2)]).unwrap();
        let inc = diagonal_embedding::<F2>(iv(3, 2, 3), &middle).unwrap();
        assert!(!split_exists(&inc).unwrap());
        let ext = Extension::from_inclusion(inc).unwrap();
        assert_eq!(
            ext.quotient().decompose(),
            Rep::from_intervals(3, [iv(3, 1, 2)]).unwrap()
        );
    }

    #[test]
    fn split_rejects_non_injective() {
        let x = e::<F2>(2, 1, 2);
        let zero = Morphism::zero(&x, &x).unwrap();
        assert_eq!(split_exists(&zero), Err(Error::NotInjective { vertex: 1 }));
    }

    #[test]
    fn morphism_commutativity_is_enforced() {
        // E12 -> E11 ⊕ E22 given by the identity-like blocks does not commute.
        let src = e::<F2>(2, 1, 2);
        let dst = e::<F2>(2, 1, 1).direct_sum(&e(2, 2, 2)).unwrap();
        let blocks = vec![m2(&[&[1]]), m2(&[&[1]])];
        assert_eq!(
            Morphism::new(src, dst, blocks),
            Err(Error::NotCommutative { arrow: 1 })
        );
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(
            e::<F2>(3, 1, 2).decompose(),
            Rep::from_intervals(3, [iv(3, 1, 2)]).unwrap()
        );
        let s = e::<F2>(3, 1, 3).direct_sum(&e(3, 2, 2)).unwrap();
        assert_eq!(
            s.decompose(),
            Rep::from_intervals(3, [iv(3, 1, 3), iv(3, 2, 2)]).unwrap()
        );
        let split = MatrixRep::<F2>::new(vec![1, 1], vec![m2(&[&[0]])]).unwrap();
        assert_eq!(
            split.decompose(),
            Rep::from_intervals(2, [iv(2, 1, 1), iv(2, 2, 2)]).unwrap()
        );
    }

    #[test]
    fn decompose_non_diagonal_maps() {
        // dims (2,2,1): arrow 1 = [[1,1],[0,0]], arrow 2 = [1,1]
        let a = m2(&[&[1, 1], &[0, 0]]);
        let b = m2(&[&[1, 1]]);
        let rep = MatrixRep::new(vec![2, 2, 1], vec![a, b]).unwrap();
        let d = rep.decompose();
        assert_eq!(d.dim_vector(), vec![2, 2, 1]);
        // rank(1->2)=1, rank(1->3)=1, rank(2->3)=1 -> E13, E11, E22
        assert_eq!(
            d,
            Rep::from_intervals(3, [iv(3, 1, 3), iv(3, 1, 1), iv(3, 2, 2)]).unwrap()
        );
    }

    #[test]
    fn quotient_and_kernel_are_inverse_constructions() {
        let y = e::<F5>(3, 1, 3);
        let (_, inc) = subrep_generated(&y, 2, &[F5::new(3)]).unwrap();
        let (z, g) = quotient(&inc).unwrap();
        assert_eq!(
            z.decompose(),
            Rep::from_intervals(3, [iv(3, 1, 1)]).unwrap()
        );
        let (x, _) = kernel(&g).unwrap();
        assert_eq!(
            x.decompose(),
            Rep::from_intervals(3, [iv(3, 2, 3)]).unwrap()
        );
    }

    #[test]
    fn pullback_along_identity() {
        let inc =
            diagonal_embedding::<F2>(iv(2, 2, 2), &Rep::from_intervals(2, [iv(2, 1, 2)]).unwrap())
                .unwrap();
        let ext = Extension::from_inclusion(inc).unwrap();
        let id = Morphism::identity(ext.quotient());
        let pb = pullback(&ext, &id).unwrap();
        assert_eq!(pb.extension.middle().dims(), &[1, 1]);
        assert_eq!(pb.extension.middle().decompose(), ext.middle().decompose());
        pb.check(&ext, &id).unwrap();
    }

    #[test]
    fn pullback_of_the_rank_three_example() {
        let middle = Rep::from_intervals(3, [iv(3, 1, 3), iv(3, 2, 2)]).unwrap();
        let inc = diagonal_embedding::<F2>(iv(3, 2, 3), &middle).unwrap();
        let ext = Extension::from_inclusion(inc).unwrap();
        let id = Morphism::identity(ext.quotient());
        let pb = pullback(&ext, &id).unwrap();
        pb.check(&ext, &id).unwrap();
        assert_eq!(pb.extension.middle().decompose(), middle);
    }

    #[test]
    fn pullback_rejects_non_surjective_cover() {
        let inc =
            diagonal_embedding::<F2>(iv(2, 2, 2), &Rep::from_intervals(2, [iv(2, 1, 2)]).unwrap())
                .unwrap();
        let ext = Extension::from_inclusion(inc).unwrap();
        let zero = Morphism::zero(ext.quotient(), ext.quotient()).unwrap();
        assert!(matches!(
            pullback(&ext, &zero),
            Err(Error::NotSurjective { .. })
        ));
    }

    #[test]
    fn surjection_search() {
        assert!(surjection_exists(&e::<F2>(4, 2, 4), &e(4, 2, 3)).unwrap());
        assert!(!surjection_exists(&e::<F2>(4, 2, 3), &e(4, 2, 4)).unwrap());
        assert!(!surjection_exists(&e::<F2>(3, 2, 3), &e(3, 1, 3)).unwrap());
    }

    #[test]
    fn serialization_roundtrip_and_field_check() {
        let rep = e::<F5>(3, 1, 2).direct_sum(&e(3, 2, 3)).unwrap();
        let data = rep.to_data();
        assert_eq!(data.prime, 5);
        let json = serde_json::to_string(&data).unwrap();
        let back: MatrixRepData = serde_json::from_str(&json).unwrap();
        assert_eq!(MatrixRep::<F5>::from_data(&back).unwrap(), rep);
        assert_eq!(
            MatrixRep::<F2>::from_data(&back),
            Err(Error::FieldMismatch { left: 2, right: 5 })
        );
        let mut bad = back.clone();
        bad.maps[0].pop();
        assert!(MatrixRep::<F5>::from_data(&bad).is_err());
    }
}
