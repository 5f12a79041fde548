//! Resolving a command-line group argument: catalog names first, then
//! `.pc` and `.grp` files.

use std::fs;
use std::path::Path;

use schur_core::catalog::{lookup, CatalogError};
use schur_core::fp::{parse_presentation, FpPresentation};
use schur_core::pc::text::parse_pc;
use schur_core::pc::PcPresentation;

use crate::CliError;

pub enum Group {
    Pc(PcPresentation),
    Fp { name: String, fp: FpPresentation },
}

pub fn resolve(input: &str, p: Option<u32>) -> Result<Group, CliError> {
    match lookup(input, p) {
        Ok(entry) => return Ok(Group::Pc(entry.pc)),
        Err(CatalogError::Unknown(_)) => {}
        Err(e) => return Err(CliError::Usage(e.to_string())),
    }
    let path = Path::new(input);
    if !path.exists() {
        return Err(CliError::Usage(format!(
            "'{input}' is neither a catalog name nor a file"
        )));
    }
    let src = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{input}: {e}")))?;
    if path.extension().is_some_and(|x| x == "pc") {
        let g = parse_pc(&src).map_err(|e| CliError::Usage(format!("{input}:{e}")))?;
        Ok(Group::Pc(g))
    } else {
        let fp = parse_presentation(&src).map_err(|e| CliError::Usage(format!("{input}:{e}")))?;
        let name = path
            .file_stem()
            .map_or(input.to_string(), |s| s.to_string_lossy().into_owned());
        Ok(Group::Fp { name, fp })
    }
}
