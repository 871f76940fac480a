//! Scan manifests: a JSON file, command-line flags, or both (flags win).

use std::path::{Path, PathBuf};

use carpet_ext::scan::{Bundle, Grid, Quantity, Span};
use carpet_ext::{Error, Result};
use serde::Deserialize;

use crate::Format;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum SpanSpec {
    Single(i64),
    Text(String),
    Bounds { lo: i64, hi: i64 },
}

impl SpanSpec {
    fn to_span(&self) -> Result<Span> {
        match self {
            SpanSpec::Single(v) => Ok(Span::single(*v)),
            SpanSpec::Text(s) => s.parse(),
            SpanSpec::Bounds { lo, hi } => Span::new(*lo, *hi),
        }
    }
}

/// On-disk form, every field optional so flags can fill the gaps.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestFile {
    pub e: Option<SpanSpec>,
    pub a: Option<SpanSpec>,
    pub b: Option<SpanSpec>,
    pub compute: Option<String>,
    pub k: Option<u32>,
    pub tangent: Option<String>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

impl ManifestFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::InvalidQuery(format!("cannot read manifest {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::InvalidQuery(format!("bad manifest {}: {e}", path.display())))
    }
}

#[derive(Debug)]
pub struct ScanManifest {
    pub grid: Grid,
    pub quantity: Quantity,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub fn parse_tangent(s: &str) -> Result<Bundle> {
    match s {
        "-H" | "tangent:-H" => Ok(Bundle::TangentMinusH),
        "-H+K" | "tangent:-H+K" => Ok(Bundle::TangentMinusHPlusK),
        "L" | "tangent:L" => Ok(Bundle::TangentTwist),
        other => Err(Error::InvalidQuery(format!("unknown tangent twist '{other}', expected -H, -H+K or L"))),
    }
}

pub struct ScanFlags<'a> {
    pub e: Option<&'a str>,
    pub a: Option<&'a str>,
    pub b: Option<&'a str>,
    pub compute: Option<&'a str>,
    pub k: Option<u32>,
    pub tangent: Option<&'a str>,
    pub format: Option<Format>,
    pub out: Option<&'a Path>,
}

fn span(flag: Option<&str>, file: Option<&SpanSpec>, name: &str) -> Result<Span> {
    match (flag, file) {
        (Some(s), _) => s.parse(),
        (None, Some(s)) => s.to_span(),
        (None, None) => Err(Error::InvalidQuery(format!("scan needs a range for {name}"))),
    }
}

pub fn resolve(flags: ScanFlags<'_>, file: ManifestFile) -> Result<ScanManifest> {
    let grid = Grid::new(span(flags.e, file.e.as_ref(), "e")?, span(flags.a, file.a.as_ref(), "a")?, span(flags.b, file.b.as_ref(), "b")?)?;
    let compute = flags.compute.map(str::to_string).or(file.compute).unwrap_or_else(|| "beta".into());
    let mut quantity: Quantity = compute.parse()?;
    let k = flags.k.or(file.k);
    if let Some(k) = k {
        match quantity {
            Quantity::NormalBound { .. } => quantity = Quantity::NormalBound { k },
            _ => return Err(Error::InvalidQuery("--k only applies to normal-k scans".into())),
        }
    }
    if let Quantity::NormalBound { k } = quantity {
        if k < 2 {
            return Err(Error::InvalidQuery(format!("normal-k scans need k >= 2, got {k}")));
        }
    }
    if let Some(t) = flags.tangent.map(str::to_string).or(file.tangent) {
        match quantity {
            Quantity::Cohomology(_) => quantity = Quantity::Cohomology(parse_tangent(&t)?),
            _ => return Err(Error::InvalidQuery("--tangent only applies to cohomology scans".into())),
        }
    }
    Ok(ScanManifest {
        grid,
        quantity,
        format: flags.format.or(file.format).unwrap_or(Format::Csv),
        out: flags.out.map(Path::to_path_buf).or(file.out),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags() -> ScanFlags<'static> {
        ScanFlags { e: None, a: None, b: None, compute: None, k: None, tangent: None, format: None, out: None }
    }

    #[test]
    fn file_and_flags_merge() {
        let file: ManifestFile = serde_json::from_str(r#"{"e": "0..1", "a": 3, "b": {"lo": 4, "hi": 8}, "compute": "beta"}"#).unwrap();
        let m = resolve(ScanFlags { b: Some("5..6"), ..flags() }, file).unwrap();
        assert_eq!(m.grid.b, Span { lo: 5, hi: 6 });
        assert_eq!(m.grid.a, Span::single(3));
        assert_eq!(m.quantity, Quantity::Beta);
        assert_eq!(m.format, Format::Csv);
    }

    #[test]
    fn rejects_bad_manifests() {
        assert!(serde_json::from_str::<ManifestFile>(r#"{"colour": 1}"#).is_err());
        assert!(resolve(flags(), ManifestFile::default()).is_err());
        let m = ScanFlags { e: Some("0"), a: Some("2"), b: Some("1..9"), compute: Some("beta"), k: Some(3), ..flags() };
        assert!(resolve(m, ManifestFile::default()).is_err());
        let m = ScanFlags { e: Some("0"), a: Some("2"), b: Some("1..9"), compute: Some("cohomology"), tangent: Some("-2H"), ..flags() };
        assert!(resolve(m, ManifestFile::default()).is_err());
    }

    #[test]
    fn tangent_and_k() {
        let m = ScanFlags { e: Some("0"), a: Some("2"), b: Some("1..9"), compute: Some("cohomology"), tangent: Some("-H+K"), ..flags() };
        assert_eq!(resolve(m, ManifestFile::default()).unwrap().quantity, Quantity::Cohomology(Bundle::TangentMinusHPlusK));
        let m = ScanFlags { e: Some("0"), a: Some("2"), b: Some("1..9"), compute: Some("normal-k"), k: Some(3), ..flags() };
        assert_eq!(resolve(m, ManifestFile::default()).unwrap().quantity, Quantity::NormalBound { k: 3 });
    }
}
