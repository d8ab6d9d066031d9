use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{bail, Context};
use kneser_chroma::{ColoringRow, ColoringTable, GroundSet, KSubset};
use serde::Serialize;

use crate::args::{Format, OutputArgs};

#[derive(Serialize)]
struct ColoringDocument<'a> {
    groundset: &'a GroundSet,
    rows: &'a [ColoringRow],
}

pub fn json<T: Serialize>(value: &T) -> anyhow::Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

pub fn csv_rows<T: Serialize>(rows: impl IntoIterator<Item = T>) -> anyhow::Result<Vec<u8>> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    Ok(writer.into_inner()?)
}

pub fn coloring(table: &ColoringTable, format: Format) -> anyhow::Result<Vec<u8>> {
    match format {
        Format::Csv => csv_rows(&table.rows),
        Format::Json => json(&ColoringDocument {
            groundset: &table.groundset,
            rows: &table.rows,
        }),
    }
}

/// Writes to `--output`, or to standard output when it is absent.
pub fn emit(out: &OutputArgs, bytes: &[u8]) -> anyhow::Result<()> {
    match &out.output {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// Color indices of an exported CSV table, checked row by row against the
/// expected vertex enumeration.
pub fn read_coloring(path: &Path, vertices: &[KSubset]) -> anyhow::Result<Vec<u64>> {
    let mut reader =
        csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let header = reader.headers()?.clone();
    if header.iter().ne(["vertex_index", "mask", "color_index"]) {
        bail!(
            "{}: expected header vertex_index,mask,color_index",
            path.display()
        );
    }
    let mut colors = Vec::with_capacity(vertices.len());
    for (i, row) in reader.deserialize::<ColoringRow>().enumerate() {
        let row = row.with_context(|| format!("{}: row {}", path.display(), i + 1))?;
        let expected = vertices.get(i).map(KSubset::mask);
        if row.vertex_index != i || Some(row.mask) != expected {
            bail!(
                "{}: row {} is vertex {} with mask {:#x}, expected vertex {i} with mask {:#x}",
                path.display(),
                i + 1,
                row.vertex_index,
                row.mask,
                expected.unwrap_or(0)
            );
        }
        colors.push(row.color_index);
    }
    if colors.len() != vertices.len() {
        bail!(
            "{}: {} rows for {} vertices",
            path.display(),
            colors.len(),
            vertices.len()
        );
    }
    Ok(colors)
}
