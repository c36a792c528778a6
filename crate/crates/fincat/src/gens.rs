//! Deterministic fixture generators: deloopings of finite groups, discrete
//! categories with involutions, skeletal matrix categories over F_{q²} with
//! conjugate-transpose, antitone posets, and products.

use thiserror::Error;

use crate::cat::{FiniteCategory, FunctorData, Morphism};
use crate::dagger::DaggerStructure;
use crate::involutive::AntiInvolutiveCategory;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("generated category would exceed the size bound ({0} morphisms)")]
    SizeExceeded(usize),
}

/// The finite field F_{q²} for q ∈ {2, 3, 4}, with Frobenius conjugation
/// x̄ = x^q. Elements are encoded as base-p digit strings of the polynomial
/// representation, so `0` and `1` are the field's zero and one.
///
/// All arithmetic is table-driven: exact, no numeric types involved.
#[derive(Debug, Clone)]
pub struct Gf {
    pub size: usize,
    pub p: usize,
    pub q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    conj: Vec<usize>,
    inv: Vec<usize>,
}

impl Gf {
    /// Builds F_{q²}; `size` must be q² for q ∈ {2, 3, 4}.
    pub fn new(size: usize) -> Result<Gf, GenError> {
        // (p, k, reduction of x^k as an element code)
        let (p, k, red): (usize, usize, Vec<usize>) = match size {
            4 => (2, 2, vec![1, 1]),       // x^2 = x + 1
            9 => (3, 2, vec![2, 0]),       // x^2 = -1
            16 => (2, 4, vec![1, 1, 0, 0]), // x^4 = x + 1
            _ => return Err(GenError::InvalidSpec(format!("unsupported field size {size}"))),
        };
        let q = match size {
            4 => 2,
            9 => 3,
            _ => 4,
        };
        let digits = |mut v: usize| -> Vec<usize> {
            let mut d = vec![0; k];
            for slot in d.iter_mut() {
                *slot = v % p;
                v /= p;
            }
            d
        };
        let undigits =
            |d: &[usize]| -> usize { d.iter().rev().fold(0, |acc, &x| acc * p + x) };

        let mut add = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                let (da, db) = (digits(a), digits(b));
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * size + b] = undigits(&s);
            }
        }
        let mut mul = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                let (da, db) = (digits(a), digits(b));
                // schoolbook product, degree < 2k-1
                let mut prod = vec![0usize; 2 * k];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // reduce x^{k+t} via x^k = red, highest degree first
                for deg in (k..2 * k).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, &r) in red.iter().enumerate() {
                        prod[deg - k + i] = (prod[deg - k + i] + c * r) % p;
                    }
                }
                mul[a * size + b] = undigits(&prod[..k]);
            }
        }
        let mut gf = Gf { size, p, q, add, mul, conj: Vec::new(), inv: Vec::new() };
        gf.conj = (0..size).map(|a| gf.pow(a, q)).collect();
        gf.inv = (0..size)
            .map(|a| (0..size).find(|&b| gf.mul(a, b) == 1).unwrap_or(0))
            .collect();
        Ok(gf)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.size).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    /// Frobenius conjugation x ↦ x^q.
    pub fn conj(&self, a: usize) -> usize {
        self.conj[a]
    }

    /// Multiplicative inverse; 0 for 0.
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }
}

/// Row-major rectangular matrix over a [`Gf`]; rows = codomain dimension,
/// cols = domain dimension, so composition is the matrix product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<usize>,
}

impl Mat {
    pub fn decode(rows: usize, cols: usize, code: usize, field: &Gf) -> Mat {
        let mut code = code;
        let entries = (0..rows * cols)
            .map(|_| {
                let e = code % field.size;
                code /= field.size;
                e
            })
            .collect();
        Mat { rows, cols, entries }
    }

    pub fn encode(&self, field: &Gf) -> usize {
        self.entries.iter().rev().fold(0, |acc, &e| acc * field.size + e)
    }

    pub fn identity(n: usize) -> Mat {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Mat { rows: n, cols: n, entries }
    }

    pub fn at(&self, r: usize, c: usize) -> usize {
        self.entries[r * self.cols + c]
    }

    pub fn matmul(&self, other: &Mat, field: &Gf) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut entries = vec![0; self.rows * other.cols];
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0;
                for k in 0..self.cols {
                    acc = field.add(acc, field.mul(self.at(r, k), other.at(k, c)));
                }
                entries[r * other.cols + c] = acc;
            }
        }
        Mat { rows: self.rows, cols: other.cols, entries }
    }

    /// Conjugate transpose.
    pub fn dagger(&self, field: &Gf) -> Mat {
        let mut entries = vec![0; self.cols * self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                entries[c * self.rows + r] = field.conj(self.at(r, c));
            }
        }
        Mat { rows: self.cols, cols: self.rows, entries }
    }
}

/// Delooping of a finite group given by a Cayley table: one object, one
/// morphism per element, compose(a, b) = table[a][b]. Element 0 must be the
/// unit. Morphism index = element index.
pub fn delooping(names: &[&str], table: &[Vec<usize>]) -> Result<FiniteCategory, GenError> {
    let n = names.len();
    if table.len() != n || table.iter().any(|r| r.len() != n) {
        return Err(GenError::InvalidSpec("Cayley table shape mismatch".into()));
    }
    if (0..n).any(|a| table[a][0] != a || table[0][a] != a) {
        return Err(GenError::InvalidSpec("element 0 is not a two-sided unit".into()));
    }
    let morphisms = names.iter().map(|&nm| Morphism::new(nm, 0, 0)).collect();
    let mut composites = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if table[a][b] >= n {
                return Err(GenError::InvalidSpec("table entry out of range".into()));
            }
            composites.push((a, b, table[a][b]));
        }
    }
    FiniteCategory::validate(vec!["x".into()], morphisms, vec![0], &composites)
        .map_err(|r| GenError::InvalidSpec(format!("Cayley table is not a group/monoid: {r}")))
}

/// The cyclic group ℤ/n as a Cayley table.
pub fn zn_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// S₃ as permutations of {0,1,2} in lex order of one-line notation:
/// 0 = id, 1 = (12), 2 = (01), 3 = (012), 4 = (021), 5 = (02).
pub fn s3_table() -> Vec<Vec<usize>> {
    let perms: [[usize; 3]; 6] =
        [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let compose = |a: &[usize; 3], b: &[usize; 3]| -> [usize; 3] {
        // a after b
        [a[b[0]], a[b[1]], a[b[2]]]
    };
    (0..6)
        .map(|a| {
            (0..6)
                .map(|b| {
                    let c = compose(&perms[a], &perms[b]);
                    perms.iter().position(|p| *p == c).unwrap()
                })
                .collect()
        })
        .collect()
}

pub fn group_inverse(table: &[Vec<usize>], g: usize) -> usize {
    (0..table.len()).find(|&h| table[g][h] == 0).unwrap()
}

/// Discrete category on `n` objects.
pub fn discrete(n: usize) -> FiniteCategory {
    let objects: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    let morphisms = (0..n).map(|i| Morphism::new(format!("id_a{i}"), i, i)).collect();
    FiniteCategory::validate(objects, morphisms, (0..n).collect(), &[])
        .expect("discrete category is valid")
}

/// Skeletal matrix category over F_{q²}: objects are dimensions
/// `0..=maxdim`, Hom(m, n) = all n×m matrices, composition = product.
/// Returns the category together with the conjugate-transpose dagger map.
pub fn matrix_category(q: usize, maxdim: usize) -> Result<(FiniteCategory, Vec<usize>), GenError> {
    let field = Gf::new(q * q)?;
    let n_mor: usize =
        (0..=maxdim).flat_map(|m| (0..=maxdim).map(move |n| field.size.pow((m * n) as u32))).sum();
    if n_mor > 100_000 {
        return Err(GenError::SizeExceeded(n_mor));
    }

    let objects: Vec<String> = (0..=maxdim).map(|d| format!("d{d}")).collect();
    let mut morphisms = Vec::with_capacity(n_mor);
    // offsets[m][n] = index of the first morphism in Hom(m, n)
    let mut offsets = vec![vec![0usize; maxdim + 1]; maxdim + 1];
    for m in 0..=maxdim {
        for n in 0..=maxdim {
            offsets[m][n] = morphisms.len();
            for code in 0..field.size.pow((m * n) as u32) {
                morphisms.push(Morphism::new(format!("m{m}{n}_{code}"), m, n));
            }
        }
    }
    let index_of =
        |mat: &Mat| -> usize { offsets[mat.cols][mat.rows] + mat.encode(&field) };
    let identities: Vec<usize> = (0..=maxdim).map(|d| index_of(&Mat::identity(d))).collect();

    let mut composites = Vec::new();
    for m in 0..=maxdim {
        for n in 0..=maxdim {
            for k in 0..=maxdim {
                // g: n -> k after f: m -> n
                for gc in 0..field.size.pow((n * k) as u32) {
                    let g = Mat::decode(k, n, gc, &field);
                    for fc in 0..field.size.pow((m * n) as u32) {
                        let f = Mat::decode(n, m, fc, &field);
                        composites.push((
                            offsets[n][k] + gc,
                            offsets[m][n] + fc,
                            index_of(&g.matmul(&f, &field)),
                        ));
                    }
                }
            }
        }
    }
    let cat = FiniteCategory::validate(objects, morphisms, identities, &composites)
        .expect("matrix category satisfies the category laws");
    let dag: Vec<usize> = (0..cat.n_morphisms())
        .map(|i| {
            let mor = cat.morphism(i);
            let (m, n) = (mor.dom, mor.cod);
            let mat = Mat::decode(n, m, i - offsets[m][n], &field);
            offsets[n][m] + mat.dagger(&field).encode(&field)
        })
        .collect();
    Ok((cat, dag))
}

/// Decodes a morphism of a [`matrix_category`] back to its matrix.
pub fn matrix_of(cat: &FiniteCategory, field: &Gf, i: usize) -> Mat {
    let mor = cat.morphism(i);
    let (m, n) = (mor.dom, mor.cod);
    // first index in Hom(m, n) is the zero matrix, named m{m}{n}_0
    let base = cat.morphism_index(&format!("m{m}{n}_0")).unwrap();
    Mat::decode(n, m, i - base, field)
}

/// Finds the morphism index of a matrix in a [`matrix_category`].
pub fn matrix_index(cat: &FiniteCategory, field: &Gf, mat: &Mat) -> usize {
    let base = cat.morphism_index(&format!("m{}{}_0", mat.cols, mat.rows)).unwrap();
    base + mat.encode(field)
}

/// Total order (chain) poset c0 < c1 < … as a category, with the antitone
/// involution i ↦ n−1−i returned as an object map.
pub fn poset_chain(n: usize) -> (FiniteCategory, Vec<usize>) {
    let objects: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let mut morphisms = Vec::new();
    let mut identities = vec![0usize; n];
    for i in 0..n {
        identities[i] = morphisms.len();
        morphisms.push(Morphism::new(format!("id_c{i}"), i, i));
    }
    let mut hom = vec![vec![usize::MAX; n]; n];
    for (i, &id) in identities.iter().enumerate() {
        hom[i][i] = id;
    }
    for i in 0..n {
        for j in i + 1..n {
            hom[i][j] = morphisms.len();
            morphisms.push(Morphism::new(format!("le_c{i}_c{j}"), i, j));
        }
    }
    let mut composites = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                composites.push((hom[j][k], hom[i][j], hom[i][k]));
            }
        }
    }
    let cat = FiniteCategory::validate(objects, morphisms, identities, &composites)
        .expect("chain poset is a category");
    (cat, (0..n).map(|i| n - 1 - i).collect())
}

/// Product category `C × D`: objects and morphisms are pairs, everything
/// componentwise.
pub fn product(c: &FiniteCategory, d: &FiniteCategory) -> Result<FiniteCategory, GenError> {
    let n_mor = c.n_morphisms() * d.n_morphisms();
    if n_mor > 100_000 {
        return Err(GenError::SizeExceeded(n_mor));
    }
    let objects: Vec<String> = (0..c.n_objects())
        .flat_map(|x| {
            (0..d.n_objects()).map(move |y| (x, y))
        })
        .map(|(x, y)| format!("({},{})", c.object_name(x), d.object_name(y)))
        .collect();
    let obj = |x: usize, y: usize| x * d.n_objects() + y;
    let mor = |f: usize, g: usize| f * d.n_morphisms() + g;
    let morphisms: Vec<Morphism> = (0..c.n_morphisms())
        .flat_map(|f| (0..d.n_morphisms()).map(move |g| (f, g)))
        .map(|(f, g)| {
            let (mf, mg) = (c.morphism(f), d.morphism(g));
            Morphism::new(
                format!("({},{})", mf.name, mg.name),
                obj(mf.dom, mg.dom),
                obj(mf.cod, mg.cod),
            )
        })
        .collect();
    let identities = (0..c.n_objects())
        .flat_map(|x| (0..d.n_objects()).map(move |y| (x, y)))
        .map(|(x, y)| mor(c.identity(x), d.identity(y)))
        .collect();
    let mut composites = Vec::new();
    for f2 in 0..c.n_morphisms() {
        for f1 in 0..c.n_morphisms() {
            let Some(fc) = c.compose(f2, f1) else { continue };
            for g2 in 0..d.n_morphisms() {
                for g1 in 0..d.n_morphisms() {
                    if let Some(gc) = d.compose(g2, g1) {
                        composites.push((mor(f2, g2), mor(f1, g1), mor(fc, gc)));
                    }
                }
            }
        }
    }
    Ok(FiniteCategory::validate(objects, morphisms, identities, &composites)
        .expect("product of categories is a category"))
}

/// Declarative generator spec; see [`generate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// One-object category from a group Cayley table, dagger g ↦ θ(g⁻¹)
    /// for an automorphism θ with θ² = id (omitted θ = identity).
    Delooping { names: Vec<String>, table: Vec<Vec<usize>>, twist: Option<Vec<usize>> },
    /// Discrete category with the permutation as anti-involution, η = id.
    DiscreteInvolution { perm: Vec<usize> },
    /// Skeletal M_{≤maxdim}(F_{q²}) with conjugate-transpose dagger.
    MatrixFiniteField { q: usize, maxdim: usize },
    /// Chain poset of length n with the order-reversing involution.
    PosetAntitone { n: usize },
    /// Product of two generated bundles (plain category only).
    Product(Box<GeneratorSpec>, Box<GeneratorSpec>),
}

/// A generated fixture: the category plus whichever extra structure the
/// kind carries.
#[derive(Debug, Clone)]
pub struct Bundle {
    pub category: FiniteCategory,
    pub dagger: Option<DaggerStructure>,
    pub involution: Option<AntiInvolutiveCategory>,
}

/// Generates a bundle; outputs pass the relevant validators by
/// construction, and generation is deterministic.
pub fn generate(spec: &GeneratorSpec) -> Result<Bundle, GenError> {
    match spec {
        GeneratorSpec::Delooping { names, table, twist } => {
            let n = table.len();
            let theta: Vec<usize> = match twist {
                Some(t) => t.clone(),
                None => (0..n).collect(),
            };
            if theta.len() != n {
                return Err(GenError::InvalidSpec("twist length mismatch".into()));
            }
            // θ must be an automorphism with θ² = id
            let auto = (0..n).all(|a| {
                theta[theta[a]] == a
                    && (0..n).all(|b| theta[table[a][b]] == table[theta[a]][theta[b]])
            });
            if !auto {
                return Err(GenError::InvalidSpec("twist is not an involutive automorphism".into()));
            }
            let names_ref: Vec<&str> = names.iter().map(String::as_str).collect();
            let cat = delooping(&names_ref, table)?;
            let dag: Vec<usize> = (0..n).map(|g| theta[group_inverse(table, g)]).collect();
            let dagger = DaggerStructure::validate(cat.clone(), dag)
                .map_err(|r| GenError::InvalidSpec(format!("induced dagger invalid: {r}")))?;
            Ok(Bundle { category: cat, dagger: Some(dagger), involution: None })
        }
        GeneratorSpec::DiscreteInvolution { perm } => {
            let n = perm.len();
            if (0..n).any(|i| perm[i] >= n || perm[perm[i]] != i) {
                return Err(GenError::InvalidSpec("permutation is not an involution".into()));
            }
            let cat = discrete(n);
            let d = FunctorData::validate(cat.opposite(), cat.clone(), perm.clone(), perm.clone())
                .map_err(|r| GenError::InvalidSpec(format!("permutation functor invalid: {r}")))?;
            let eta: Vec<usize> = (0..n).map(|x| cat.identity(x)).collect();
            let inv = AntiInvolutiveCategory::validate(cat.clone(), d, eta)
                .map_err(|r| GenError::InvalidSpec(format!("involution invalid: {r}")))?;
            Ok(Bundle { category: cat, dagger: None, involution: Some(inv) })
        }
        GeneratorSpec::MatrixFiniteField { q, maxdim } => {
            let (cat, dag) = matrix_category(*q, *maxdim)?;
            let dagger = DaggerStructure::validate(cat.clone(), dag)
                .map_err(|r| GenError::InvalidSpec(format!("conjugate transpose invalid: {r}")))?;
            Ok(Bundle { category: cat, dagger: Some(dagger), involution: None })
        }
        GeneratorSpec::PosetAntitone { n } => {
            let (cat, obj_map) = poset_chain(*n);
            // antitone map on morphisms: le_ci_cj ↦ le_c(n-1-j)_c(n-1-i)
            let mor_map: Vec<usize> = (0..cat.n_morphisms())
                .map(|f| {
                    let m = cat.morphism(f);
                    let (i, j) = (obj_map[m.dom], obj_map[m.cod]);
                    // unique morphism j -> i in the opposite orientation
                    cat.hom(j, i).next().expect("chain poset is total")
                })
                .collect();
            let d = FunctorData::validate(cat.opposite(), cat.clone(), obj_map, mor_map)
                .map_err(|r| GenError::InvalidSpec(format!("antitone functor invalid: {r}")))?;
            let eta: Vec<usize> = (0..cat.n_objects()).map(|x| cat.identity(x)).collect();
            let inv = AntiInvolutiveCategory::validate(cat.clone(), d, eta)
                .map_err(|r| GenError::InvalidSpec(format!("involution invalid: {r}")))?;
            Ok(Bundle { category: cat, dagger: None, involution: Some(inv) })
        }
        GeneratorSpec::Product(a, b) => {
            let (ba, bb) = (generate(a)?, generate(b)?);
            let cat = product(&ba.category, &bb.category)?;
            Ok(Bundle { category: cat, dagger: None, involution: None })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        let f = Gf::new(4).unwrap();
        // ω = 2 (the polynomial x): ω² = ω + 1 = 3, ω³ = 1
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.pow(2, 3), 1);
        assert_eq!(f.conj(2), 3);
        assert_eq!(f.add(2, 3), 1);
        // conjugation is a field involution fixing F₂
        for a in 0..4 {
            assert_eq!(f.conj(f.conj(a)), a);
            for b in 0..4 {
                assert_eq!(f.conj(f.mul(a, b)), f.mul(f.conj(a), f.conj(b)));
                assert_eq!(f.conj(f.add(a, b)), f.add(f.conj(a), f.conj(b)));
            }
        }
        assert_eq!(f.conj(0), 0);
        assert_eq!(f.conj(1), 1);
    }

    #[test]
    fn f9_and_f16_are_fields() {
        for size in [9usize, 16] {
            let f = Gf::new(size).unwrap();
            for a in 1..size {
                assert_eq!(f.mul(a, f.inv(a)), 1, "inverse fails in F{size} at {a}");
                assert_eq!(f.conj(f.conj(a)), a);
            }
            // Frobenius has the right order: conj ≠ id but conj² = id
            assert!((0..size).any(|a| f.conj(a) != a));
        }
    }

    #[test]
    fn matrix_category_hom_sizes() {
        let (m2, dag) = matrix_category(2, 2).unwrap();
        assert_eq!(m2.hom(2, 2).count(), 256);
        assert_eq!(m2.hom(1, 2).count(), 16);
        assert_eq!(m2.hom(0, 2).count(), 1);
        // dagger is an involution exchanging hom-sets
        for i in 0..m2.n_morphisms() {
            assert_eq!(dag[dag[i]], i);
            assert_eq!(m2.morphism(dag[i]).dom, m2.morphism(i).cod);
        }
    }

    #[test]
    fn s3_is_a_group_and_delooping_validates() {
        let t = s3_table();
        let names: Vec<String> = (0..6).map(|i| format!("s{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let cat = delooping(&refs, &t).unwrap();
        assert_eq!(cat.n_morphisms(), 6);
        // noncommutative witness
        assert!((0..6).any(|a| (0..6).any(|b| t[a][b] != t[b][a])));
    }

    #[test]
    fn delooping_z4_with_inversion_dagger() {
        let spec = GeneratorSpec::Delooping {
            names: (0..4).map(|i| format!("g{i}")).collect(),
            table: zn_table(4),
            twist: None,
        };
        let b = generate(&spec).unwrap();
        let dag = b.dagger.unwrap();
        for g in 0..4usize {
            assert_eq!(dag.dag(g), (4 - g) % 4);
        }
    }

    #[test]
    fn discrete_involution_swap() {
        let b = generate(&GeneratorSpec::DiscreteInvolution { perm: vec![1, 0] }).unwrap();
        let inv = b.involution.unwrap();
        assert_eq!(inv.d_obj(0), 1);
        assert_eq!(inv.d_obj(1), 0);
    }

    #[test]
    fn poset_antitone_and_product_generate() {
        let p = generate(&GeneratorSpec::PosetAntitone { n: 3 }).unwrap();
        assert!(p.involution.is_some());
        let prod = generate(&GeneratorSpec::Product(
            Box::new(GeneratorSpec::DiscreteInvolution { perm: vec![1, 0] }),
            Box::new(GeneratorSpec::PosetAntitone { n: 2 }),
        ))
        .unwrap();
        assert_eq!(prod.category.n_objects(), 4);
        assert_eq!(prod.category.n_morphisms(), 6);
    }
}
