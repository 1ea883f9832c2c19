//! Corner wetting for Hele-Shaw flow injected at a point: the reentrant
//! corner of an L-shaped table gets wet, a convex pentagon corner also does.

use harnack_lab::geometry::make_polygon;
use harnack_lab::heleshaw::wets_corner;

fn main() -> harnack_lab::Result<()> {
    let h = 1.0 / 64.0;
    let t_max = 1e3 * std::f64::consts::PI * (8.0 * h) * (8.0 * h);
    let tables = [
        ("L-shape", vec![[-1.0, -1.0], [0.0, -1.0], [0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [-1.0, 1.0]], [
            0.0, 0.0,
        ], [-0.5, 0.5]),
        ("pentagon", vec![[-1.0, -1.0], [1.0, -1.0], [1.0, 0.0], [0.0, 1.0], [-1.0, 1.0]], [1.0, 0.0], [
            -0.25, -0.25,
        ]),
    ];
    for (name, verts, corner, source) in tables {
        let table = make_polygon(&verts)?;
        let rep = wets_corner(&table, &corner, &source, t_max, 14, h)?;
        println!(
            "{name}: corner angle {:.4}, wet = {}, first wet t = {:?}, volume balance error = {:.2e}",
            rep.corner_angle.unwrap_or(f64::NAN),
            rep.wet,
            rep.first_wet_t,
            rep.volume_balance_error
        );
    }
    Ok(())
}
