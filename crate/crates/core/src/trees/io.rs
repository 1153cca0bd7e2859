use std::io::Read;
use std::path::Path;

use super::geometry::Point;
use crate::error::{Error, Result};

/// Reads points from CSV with columns `x,y`. A header row is optional and
/// recognised by a first row that does not parse as two numbers.
pub fn read_points_csv<R: Read>(input: R) -> Result<Vec<Point>> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(input);
    let mut points = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() < 2 {
            return Err(Error::Config(format!("row {}: expected two columns x,y", row + 1)));
        }
        match (record[0].parse::<f64>(), record[1].parse::<f64>()) {
            (Ok(x), Ok(y)) => points.push(Point::new(x, y).validated()?),
            _ if row == 0 => continue,
            _ => return Err(Error::Config(format!("row {}: cannot parse `{}`,`{}`", row + 1, &record[0], &record[1]))),
        }
    }
    Ok(points)
}

pub fn read_points_file(path: &Path) -> Result<Vec<Point>> {
    read_points_csv(std::fs::File::open(path)?)
}
