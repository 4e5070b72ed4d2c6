use std::fmt;

/// A permutation of the four vertex positions of a tetrahedron, stored as
/// the image of each position.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "Perm4({a}{b}{c}{d})")
    }
}

/// The six permutations of three items in lexicographic order.
pub(crate) const S3: [[u8; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// Panics unless `images` is a permutation of `0..4`.
    pub fn new(images: [u8; 4]) -> Self {
        let mut seen = [false; 4];
        for &x in &images {
            assert!(x < 4 && !seen[x as usize], "not a permutation: {images:?}");
            seen[x as usize] = true;
        }
        Perm4(images)
    }

    pub fn transposition(a: u8, b: u8) -> Self {
        let mut p = [0, 1, 2, 3];
        p.swap(a as usize, b as usize);
        Perm4(p)
    }

    #[inline]
    pub fn apply(self, i: u8) -> u8 {
        self.0[i as usize]
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    pub fn inverse(self) -> Self {
        let mut inv = [0; 4];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm4) -> Self {
        Perm4(other.0.map(|x| self.0[x as usize]))
    }

    /// All 24 permutations in lexicographic order.
    pub fn all() -> impl Iterator<Item = Perm4> {
        (0..24).map(Perm4::from_index)
    }

    pub fn from_index(mut idx: usize) -> Self {
        let mut pool = vec![0u8, 1, 2, 3];
        let mut out = [0u8; 4];
        for (slot, fact) in out.iter_mut().zip([6, 2, 1, 1]) {
            *slot = pool.remove(idx / fact);
            idx %= fact;
        }
        Perm4(out)
    }

    pub fn index(self) -> usize {
        let mut pool = vec![0u8, 1, 2, 3];
        let mut idx = 0;
        for (x, fact) in self.0.iter().zip([6, 2, 1, 1]) {
            let k = pool.iter().position(|p| p == x).unwrap();
            idx += k * fact;
            pool.remove(k);
        }
        idx
    }
}

/// The vertex positions of face `f` (the face opposite vertex `f`), ascending.
pub fn face_vertices(f: u8) -> [u8; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for v in 0..4 {
        if v != f {
            out[k] = v;
            k += 1;
        }
    }
    out
}

/// Builds the gluing permutation for face `fa` → face `fb` from the index
/// of the S3 bijection between their ascending vertex lists.
pub fn perm_from_face_index(fa: u8, fb: u8, idx: usize) -> Perm4 {
    let a = face_vertices(fa);
    let b = face_vertices(fb);
    let pi = S3[idx];
    let mut img = [0u8; 4];
    img[fa as usize] = fb;
    for i in 0..3 {
        img[a[i] as usize] = b[pi[i] as usize];
    }
    Perm4(img)
}

/// Inverse of [`perm_from_face_index`]. `p` must send `fa` to `fb`.
pub fn face_index_of_perm(fa: u8, p: Perm4) -> usize {
    let fb = p.apply(fa);
    let a = face_vertices(fa);
    let b = face_vertices(fb);
    let pi: [u8; 3] = a.map(|v| b.iter().position(|&x| x == p.apply(v)).unwrap() as u8);
    S3.iter().position(|&s| s == pi).unwrap()
}
