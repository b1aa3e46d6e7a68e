use super::Ray;
use crate::logic::OrthoLogic;

/// A named built-in logic, with its integer ray realization when one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub logic: OrthoLogic,
    pub rays: Option<Vec<Ray>>,
}

impl CatalogEntry {
    pub fn dim(&self) -> Option<usize> {
        self.rays.as_ref().and_then(|r| r.first()).map(Ray::dim)
    }
}

pub const CATALOG_NAMES: [&str; 6] = ["L_AB", "fig3a", "fig3b", "peres24", "cabello18", "triangle"];

pub fn catalog_names() -> &'static [&'static str] {
    &CATALOG_NAMES
}

/// Looks up a built-in logic by name.
pub fn catalog(name: &str) -> Option<CatalogEntry> {
    let entry = match name {
        "L_AB" => CatalogEntry {
            name: "L_AB",
            description: "two disjoint two-atom blocks; spin-1/2 along two noncollinear directions",
            logic: build(4, &[&[0, 1], &[2, 3]], Some(&["a1", "a2", "b1", "b2"])),
            rays: Some(rays(&[&[0, 1], &[1, 0], &[-1, 1], &[1, 1]])),
        },
        "fig3a" => CatalogEntry {
            name: "fig3a",
            description: "three interlinked contexts in four dimensions (14 two-valued states)",
            // Atom k carries label k+1; context and atom order follow the
            // printed partition logic.
            logic: build(9, &[&[0, 1, 2, 3], &[4, 5, 6, 3], &[0, 6, 7, 8]], None),
            rays: Some(rays(&[
                &[1, 0, 0, 0],
                &[0, 1, 1, 0],
                &[0, 1, -1, 0],
                &[0, 0, 0, 1],
                &[1, 0, 1, 0],
                &[1, 0, -1, 0],
                &[0, 1, 0, 0],
                &[0, 0, -1, 1],
                &[0, 0, 1, 1],
            ])),
        },
        "fig3b" => CatalogEntry {
            name: "fig3b",
            description: "two three-atom contexts sharing one atom",
            logic: build(5, &[&[0, 1, 2], &[0, 3, 4]], None),
            rays: Some(rays(&[&[1, 0, 0], &[0, 1, 1], &[0, 1, -1], &[0, 1, 0], &[0, 0, 1]])),
        },
        "cabello18" => CatalogEntry {
            name: "cabello18",
            description: "18 rays in 9 contexts, every ray in exactly two (parity proof)",
            logic: build(18, &CABELLO18_CONTEXTS, None),
            rays: Some(rays(&CABELLO18_RAYS)),
        },
        "peres24" => {
            let r = peres24_rays();
            CatalogEntry {
                name: "peres24",
                description: "24 rays in 24 contexts in four dimensions (no two-valued state)",
                logic: build(24, &PERES24_CONTEXTS, None),
                rays: Some(r),
            }
        }
        "triangle" => CatalogEntry {
            name: "triangle",
            description: "blocks 1-2-3, 3-4-5, 5-6-1 (no real realization in three dimensions)",
            logic: build(6, &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 0]], None),
            rays: None,
        },
        _ => return None,
    };
    Some(entry)
}

fn build(atoms: usize, contexts: &[&[usize]], labels: Option<&[&str]>) -> OrthoLogic {
    let logic = OrthoLogic::new(atoms, contexts.iter().map(|c| c.to_vec()).collect())
        .expect("catalog logics are valid");
    match labels {
        Some(l) => logic.with_labels(l.to_vec()).expect("one label per atom"),
        None => logic,
    }
}

fn rays(components: &[&[i64]]) -> Vec<Ray> {
    components
        .iter()
        .map(|c| Ray::new(c.to_vec()).expect("catalog rays are valid"))
        .collect()
}

const CABELLO18_RAYS: [&[i64]; 18] = [
    &[0, 1, -1, 0],
    &[0, 0, 1, -1],
    &[1, 0, 0, 1],
    &[1, -1, 0, 0],
    &[-1, 1, 1, 1],
    &[1, 1, 1, 1],
    &[1, 1, 1, -1],
    &[1, 1, -1, -1],
    &[1, 1, -1, 1],
    &[0, 1, 1, 0],
    &[1, -1, 1, -1],
    &[0, 0, 1, 1],
    &[1, 0, 1, 0],
    &[0, 0, 0, 1],
    &[1, 0, -1, 0],
    &[0, 1, 0, 0],
    &[0, 1, 0, -1],
    &[1, 0, 0, 0],
];

const CABELLO18_CONTEXTS: [&[usize]; 9] = [
    &[0, 2, 4, 6],
    &[0, 9, 13, 17],
    &[1, 3, 5, 7],
    &[1, 11, 15, 17],
    &[2, 7, 9, 10],
    &[3, 6, 8, 11],
    &[4, 8, 12, 16],
    &[5, 10, 14, 16],
    &[12, 13, 14, 15],
];

/// The 24 rays: unit axes, then `e_i ± e_j` for `i < j`, then
/// `(1, ±1, ±1, ±1)` with the signs counted in binary.
fn peres24_rays() -> Vec<Ray> {
    let mut out = Vec::with_capacity(24);
    for i in 0..4 {
        let mut v = vec![0; 4];
        v[i] = 1;
        out.push(v);
    }
    for i in 0..4 {
        for j in i + 1..4 {
            for sign in [1, -1] {
                let mut v = vec![0; 4];
                v[i] = 1;
                v[j] = sign;
                out.push(v);
            }
        }
    }
    for bits in 0..8 {
        let s = |k: u32| if bits >> (2 - k) & 1 == 0 { 1 } else { -1 };
        out.push(vec![1, s(0), s(1), s(2)]);
    }
    out.into_iter()
        .map(|c| Ray::new(c).expect("catalog rays are valid"))
        .collect()
}

const PERES24_CONTEXTS: [&[usize]; 24] = [
    &[0, 1, 2, 3],
    &[0, 1, 14, 15],
    &[0, 2, 12, 13],
    &[0, 3, 10, 11],
    &[1, 2, 8, 9],
    &[1, 3, 6, 7],
    &[2, 3, 4, 5],
    &[4, 5, 14, 15],
    &[4, 14, 21, 22],
    &[4, 15, 20, 23],
    &[5, 14, 17, 18],
    &[5, 15, 16, 19],
    &[6, 7, 12, 13],
    &[6, 12, 19, 22],
    &[6, 13, 18, 23],
    &[7, 12, 17, 20],
    &[7, 13, 16, 21],
    &[8, 9, 10, 11],
    &[8, 10, 19, 21],
    &[8, 11, 17, 23],
    &[9, 10, 18, 20],
    &[9, 11, 16, 22],
    &[16, 19, 21, 22],
    &[17, 18, 20, 23],
];
