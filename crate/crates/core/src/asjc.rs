//! Bundled table of top-level All Science Journal Classification areas.
//!
//! Journal subject codes are 4-digit integers whose first two digits name
//! the top-level area; 2-digit codes in queries act as prefixes covering
//! every 4-digit code underneath them.

/// Top-level areas keyed by 2-digit prefix.
pub const TOP_LEVEL_AREAS: &[(u8, &str)] = &[
    (10, "Multidisciplinary"),
    (11, "Agricultural and Biological Sciences"),
    (12, "Arts and Humanities"),
    (13, "Biochemistry, Genetics and Molecular Biology"),
    (14, "Business, Management and Accounting"),
    (15, "Chemical Engineering"),
    (16, "Chemistry"),
    (17, "Computer Science"),
    (18, "Decision Sciences"),
    (19, "Earth and Planetary Sciences"),
    (20, "Economics, Econometrics and Finance"),
    (21, "Energy"),
    (22, "Engineering"),
    (23, "Environmental Science"),
    (24, "Immunology and Microbiology"),
    (25, "Materials Science"),
    (26, "Mathematics"),
    (27, "Medicine"),
    (28, "Neuroscience"),
    (29, "Nursing"),
    (30, "Pharmacology, Toxicology and Pharmaceutics"),
    (31, "Physics and Astronomy"),
    (32, "Psychology"),
    (33, "Social Sciences"),
    (34, "Veterinary"),
    (35, "Dentistry"),
    (36, "Health Professions"),
];

/// Area name for a 2-digit prefix.
pub fn area_name(prefix: u8) -> Option<&'static str> {
    TOP_LEVEL_AREAS
        .iter()
        .find(|(p, _)| *p == prefix)
        .map(|(_, name)| *name)
}

/// Area name for a 4-digit subject code.
pub fn area_of_code(code: u16) -> Option<&'static str> {
    area_name((code / 100) as u8)
}
