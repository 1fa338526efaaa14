use std::io::{Read, Write};

use super::{merge_times, BVPath, Node};
use crate::error::{invalid, Error, Result};
use crate::geometry::Point;

fn csv_err(e: csv::Error) -> Error {
    Error::Invalid(format!("csv: {e}"))
}

impl BVPath {
    /// Writes rows `t, f_1(t), ..., f_d(t)` on the node times merged with
    /// `grid`. At a jump two rows share the same `t`: the left limit first,
    /// then the value.
    pub fn write_csv<W: Write>(&self, writer: W, grid: &[f64]) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["t".to_string()];
        header.extend((1..=self.dim()).map(|i| format!("f{i}")));
        w.write_record(&header).map_err(csv_err)?;
        let times = merge_times(&self.times(), grid);
        for t in times.into_iter().filter(|t| (0.0..=self.horizon()).contains(t)) {
            let (left, right) = self.one_sided(t)?;
            if left != right {
                write_row(&mut w, t, &left)?;
            }
            write_row(&mut w, t, &right)?;
        }
        w.flush().map_err(|e| Error::Invalid(format!("csv: {e}")))?;
        Ok(())
    }

    /// Reads the format produced by [`write_csv`](Self::write_csv); a
    /// repeated time denotes a jump.
    pub fn read_csv<R: Read>(reader: R) -> Result<BVPath> {
        let mut r = csv::Reader::from_reader(reader);
        let mut rows: Vec<(f64, Point)> = Vec::new();
        for record in r.records() {
            let record = record.map_err(csv_err)?;
            let mut fields = record
                .iter()
                .map(|s| s.trim().parse::<f64>().map_err(|e| Error::Invalid(format!("csv value {s:?}: {e}"))));
            let t = fields.next().ok_or_else(|| Error::Invalid("empty csv row".into()))??;
            let coords = fields.collect::<Result<Vec<f64>>>()?;
            rows.push((t, Point::new(coords)?));
        }
        let mut nodes: Vec<Node> = Vec::new();
        for (t, value) in rows {
            match nodes.last_mut() {
                Some(last) if last.t == t => {
                    if last.left != last.right {
                        return invalid(format!("more than two rows at t = {t}"));
                    }
                    last.right = value;
                }
                _ => nodes.push(Node::continuous(t, value)),
            }
        }
        let Some(horizon) = nodes.last().map(|n| n.t) else {
            return invalid("csv contains no rows");
        };
        BVPath::new(horizon, nodes)
    }
}

fn write_row<W: Write>(w: &mut csv::Writer<W>, t: f64, p: &Point) -> Result<()> {
    let mut rec = vec![t.to_string()];
    rec.extend(p.coords().iter().map(|c| c.to_string()));
    w.write_record(&rec).map_err(csv_err)
}
