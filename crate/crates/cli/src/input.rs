use std::fs;
use std::path::Path;

use freeknot::diagram::{parse_gauss_code, Diagram};

use crate::report::{usage, Failure};

pub fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Diagrams named by a CODE argument: the code itself, or every diagram
/// in the file when written as `@PATH`.
pub fn diagrams(arg: &str) -> Result<Vec<Diagram>, Failure> {
    let Some(path) = arg.strip_prefix('@') else {
        return Ok(vec![parse_gauss_code(arg).map_err(usage)?]);
    };
    let text = read_file(Path::new(path))?;
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let code = line.split('#').next().unwrap_or("").trim();
        if code.is_empty() {
            continue;
        }
        out.push(parse_gauss_code(code).map_err(|e| usage(format!("{path}:{}: {e}", n + 1)))?);
    }
    if out.is_empty() {
        return Err(usage(format!("{path}: no diagrams")));
    }
    Ok(out)
}

pub fn diagram(arg: &str) -> Result<Diagram, Failure> {
    let mut all = diagrams(arg)?;
    if all.len() > 1 {
        return Err(usage(format!("expected one diagram, {arg} holds {}", all.len())));
    }
    Ok(all.remove(0))
}
