//! Data files. The SL2(Z[i]) presentation and matrices are compiled in; other
//! files are read from `$RFRS_DATA_DIR` or the repository's `data/` directory.

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::fpgroup::{parse_presentation, Presentation};
use crate::linalg::json::{parse_generator_file, GeneratorFile};
use crate::linalg::matrix::FMat;

pub const DATA_DIR_ENV: &str = "RFRS_DATA_DIR";

const BUNDLED: &[(&str, &str)] = &[
    ("sl2_d1.pres", include_str!("../../../data/sl2_d1.pres")),
    ("sl2_d1.json", include_str!("../../../data/sl2_d1.json")),
    ("o41_reflections.json", include_str!("../../../data/o41_reflections.json")),
];

pub fn data_dir() -> PathBuf {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(d) => PathBuf::from(d),
        None => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"),
    }
}

/// A data file by name: the data directory first, then the bundled copy.
pub fn load_text(name: &str) -> Result<String> {
    let path = data_dir().join(name);
    if path.is_file() {
        return Ok(std::fs::read_to_string(path)?);
    }
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| t.to_string())
        .ok_or_else(|| Error::NotFound(format!("data file {name} (looked in {})", data_dir().display())))
}

pub fn has_data(name: &str) -> bool {
    data_dir().join(name).is_file() || BUNDLED.iter().any(|(n, _)| *n == name)
}

/// Presentation and generator matrices of SL2(O_d), ordered as the presentation's generators.
pub fn bianchi_data(d: u32) -> Result<(Presentation, Vec<FMat>, GeneratorFile)> {
    let pres = parse_presentation(&load_text(&format!("sl2_d{d}.pres"))?)?;
    let gf = parse_generator_file(&load_text(&format!("sl2_d{d}.json"))?)?;
    let mats = matrices_for(&pres, &gf)?;
    Ok((pres, mats, gf))
}

pub fn matrices_for(pres: &Presentation, gf: &GeneratorFile) -> Result<Vec<FMat>> {
    pres.gens
        .iter()
        .map(|g| gf.generators.get(g).cloned().ok_or_else(|| Error::Input(format!("no matrix for generator {g}"))))
        .collect()
}

/// Reflection generators of O'(q0; Z) in the order s1..s5, with the file's form.
pub fn o41_reflections() -> Result<(Vec<FMat>, GeneratorFile)> {
    let gf = parse_generator_file(&load_text("o41_reflections.json")?)?;
    let mats = (1..=5)
        .map(|i| gf.generators.get(&format!("s{i}")).cloned().ok_or_else(|| Error::Input(format!("missing reflection s{i}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok((mats, gf))
}
