use std::io::{Read, Write};
use std::sync::Arc;

use crate::error::{invalid, Result};
use crate::geometry::{GridDomain, Region};

use super::Dirichlet;

/// Values of a discrete solution on the unknowns of a grid.
///
/// Outside the domain the field is extended by zero. Boundary values used by
/// gradients at cut cells come from the Dirichlet description the field was
/// solved with.
#[derive(Clone, Debug)]
pub struct ScalarField {
    pub grid: Arc<GridDomain>,
    pub values: Vec<f64>,
    pub boundary_data: Dirichlet,
}

const MAGIC: &[u8; 4] = b"HLSF";
const VERSION: u32 = 1;

impl ScalarField {
    pub fn new(grid: Arc<GridDomain>, values: Vec<f64>, boundary_data: Dirichlet) -> Self {
        assert_eq!(values.len(), grid.num_unknowns());
        ScalarField { grid, values, boundary_data }
    }

    /// Samples `f` at the unknowns; boundary data is `f` itself.
    pub fn from_fn(grid: Arc<GridDomain>, f: impl Fn(&[f64; 3]) -> f64 + Send + Sync + 'static) -> Self {
        let f = Arc::new(f);
        let values = (0..grid.num_unknowns()).map(|u| f(&grid.point(u))).collect();
        let g = f.clone();
        ScalarField { grid, values, boundary_data: Dirichlet::function("sampled", move |x, _| g(x)) }
    }

    pub fn scaled(&self, s: f64) -> Self {
        ScalarField {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * s).collect(),
            boundary_data: self.boundary_data.scaled(s),
        }
    }

    pub fn lattice_value(&self, lin: usize) -> f64 {
        self.grid.unknown_at(lin).map_or(0.0, |u| self.values[u])
    }

    pub fn boundary_value(&self, u: usize, dir: usize) -> Option<f64> {
        self.grid.boundary_point(u, dir).map(|(x, part)| self.boundary_data.value(&x, part))
    }

    /// Multilinear interpolation over the lattice (zero outside the domain).
    pub fn interpolate(&self, x: &[f64]) -> f64 {
        let g = &*self.grid;
        let mut base = [0i64; 3];
        let mut frac = [0.0; 3];
        for d in 0..g.dim {
            let s = x[d] / g.h + g.origin_index[d] as f64;
            let f = s.floor();
            base[d] = f as i64;
            frac[d] = s - f;
        }
        let mut acc = 0.0;
        for corner in 0..(1 << g.dim) {
            let mut c = base;
            let mut w = 1.0;
            for d in 0..g.dim {
                if corner >> d & 1 == 1 {
                    c[d] += 1;
                    w *= frac[d];
                } else {
                    w *= 1.0 - frac[d];
                }
            }
            if w != 0.0 {
                if let Some(lin) = g.lattice_index(c) {
                    acc += w * self.lattice_value(lin);
                }
            }
        }
        acc
    }

    /// Multilinear interpolation over the corners that are unknowns, with
    /// weights renormalized; `0` when no corner is inside.
    pub fn interpolate_interior(&self, x: &[f64]) -> f64 {
        let g = &*self.grid;
        let mut base = [0i64; 3];
        let mut frac = [0.0; 3];
        for d in 0..g.dim {
            let s = x[d] / g.h + g.origin_index[d] as f64;
            let f = s.floor();
            base[d] = f as i64;
            frac[d] = s - f;
        }
        let (mut acc, mut wsum) = (0.0, 0.0);
        for corner in 0..(1 << g.dim) {
            let mut c = base;
            let mut w = 1.0;
            for d in 0..g.dim {
                if corner >> d & 1 == 1 {
                    c[d] += 1;
                    w *= frac[d];
                } else {
                    w *= 1.0 - frac[d];
                }
            }
            if let Some(u) = g.lattice_index(c).and_then(|lin| g.unknown_at(lin)) {
                acc += w * self.values[u];
                wsum += w;
            }
        }
        if wsum > 0.0 {
            acc / wsum
        } else {
            0.0
        }
    }

    /// Centered-difference gradient at unknown `u`; cut directions use the
    /// boundary value at the crossing.
    pub fn gradient(&self, u: usize) -> [f64; 3] {
        let g = &*self.grid;
        let mut grad = [0.0; 3];
        let eta = g.intercepts(u);
        for axis in 0..g.dim {
            let side = |dir: usize| -> f64 {
                match g.neighbor_unknown(u, dir) {
                    Some(n) => self.values[n],
                    None => self.boundary_value(u, dir).unwrap_or(0.0),
                }
            };
            let minus = side(2 * axis);
            let plus = side(2 * axis + 1);
            grad[axis] = (plus - minus) / ((eta[2 * axis] + eta[2 * axis + 1]) * g.h);
        }
        grad
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `x ↦ v(r x) / r^degree` on the grid dilated by `1/r`.
    ///
    /// Only meaningful for dilation-invariant domains, whose lattice and
    /// intercept fractions are unchanged by the dilation.
    pub fn rescaled(&self, r: f64, degree: f64) -> Result<Self> {
        let old = &*self.grid;
        if !old.spec().is_conical() || old.region.clip.is_some() {
            return Err(invalid("rescaling needs a cone or sector grid"));
        }
        let mut grid = old.clone();
        grid.h = old.h / r;
        grid.region = Region::new(old.spec().clone().with_radius(old.spec().radius() / r)?);
        let factor = r.powf(-degree);
        let inner = self.boundary_data.clone();
        Ok(ScalarField {
            grid: Arc::new(grid),
            values: self.values.iter().map(|v| v * factor).collect(),
            boundary_data: Dirichlet::function("rescaled", move |x, part| {
                let y = [x[0] * r, x[1] * r, x[2] * r];
                inner.value(&y, part) * factor
            }),
        })
    }

    /// CSV `i,j[,k],x,y[,z],value`, one row per unknown.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let g = &*self.grid;
        let mut w = csv::Writer::from_writer(out);
        let header: &[&str] = if g.dim == 2 {
            &["i", "j", "x", "y", "value"]
        } else {
            &["i", "j", "k", "x", "y", "z", "value"]
        };
        w.write_record(header).map_err(csv_err)?;
        for (u, v) in self.values.iter().enumerate() {
            let c = g.lattice_coords(g.lattice_of(u));
            let x = g.point(u);
            let mut rec: Vec<String> = (0..g.dim).map(|d| (c[d] - g.origin_index[d]).to_string()).collect();
            rec.extend((0..g.dim).map(|d| format!("{:.17e}", x[d])));
            rec.push(format!("{v:.17e}"));
            w.write_record(&rec).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Binary layout, little endian:
    ///
    /// ```text
    /// b"HLSF" | u32 version (1) | u32 dim | 3 × u64 shape | 3 × i64 origin_index
    /// | f64 h | u64 count | count × f64 values
    /// ```
    ///
    /// Values cover the whole lattice in `i + nx·(j + ny·k)` order with zeros
    /// outside the domain; `count = nx·ny·nz`.
    pub fn write_binary<W: Write>(&self, mut out: W) -> Result<()> {
        let g = &*self.grid;
        out.write_all(MAGIC)?;
        out.write_all(&VERSION.to_le_bytes())?;
        out.write_all(&(g.dim as u32).to_le_bytes())?;
        for s in g.shape {
            out.write_all(&(s as u64).to_le_bytes())?;
        }
        for o in g.origin_index {
            out.write_all(&o.to_le_bytes())?;
        }
        out.write_all(&g.h.to_le_bytes())?;
        out.write_all(&(g.num_lattice() as u64).to_le_bytes())?;
        for lin in 0..g.num_lattice() {
            out.write_all(&self.lattice_value(lin).to_le_bytes())?;
        }
        Ok(())
    }
}

/// Header and dense values read back from [`ScalarField::write_binary`].
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryField {
    pub dim: usize,
    pub shape: [usize; 3],
    pub origin_index: [i64; 3],
    pub h: f64,
    pub values: Vec<f64>,
}

pub fn read_binary<R: Read>(mut input: R) -> Result<BinaryField> {
    let mut buf4 = [0u8; 4];
    let mut buf8 = [0u8; 8];
    input.read_exact(&mut buf4)?;
    if &buf4 != MAGIC {
        return Err(invalid("not a scalar-field file"));
    }
    input.read_exact(&mut buf4)?;
    if u32::from_le_bytes(buf4) != VERSION {
        return Err(invalid("unsupported scalar-field version"));
    }
    input.read_exact(&mut buf4)?;
    let dim = u32::from_le_bytes(buf4) as usize;
    let mut shape = [0usize; 3];
    for s in shape.iter_mut() {
        input.read_exact(&mut buf8)?;
        *s = u64::from_le_bytes(buf8) as usize;
    }
    let mut origin_index = [0i64; 3];
    for o in origin_index.iter_mut() {
        input.read_exact(&mut buf8)?;
        *o = i64::from_le_bytes(buf8);
    }
    input.read_exact(&mut buf8)?;
    let h = f64::from_le_bytes(buf8);
    input.read_exact(&mut buf8)?;
    let count = u64::from_le_bytes(buf8) as usize;
    if count != shape.iter().product::<usize>() {
        return Err(invalid("scalar-field count does not match its shape"));
    }
    let mut values = Vec::with_capacity(count);
    for _ in 0..count {
        input.read_exact(&mut buf8)?;
        values.push(f64::from_le_bytes(buf8));
    }
    Ok(BinaryField { dim, shape, origin_index, h, values })
}

fn csv_err(e: csv::Error) -> crate::Error {
    crate::Error::Io(std::io::Error::other(e.to_string()))
}
