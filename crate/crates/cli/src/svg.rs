//! Deterministic SVG rendering of planar tropical regions and circle sets:
//! dashed axes, shaded 2-cells, solid rays and segments, filled dots for
//! closed points and open circles for excluded endpoints. Geometry is
//! computed exactly and converted to fixed-precision coordinates only when
//! written out.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use tropos_core::geometry::{Constraint, Dir, Item, Polyhedron, Rel};
use tropos_core::tropical::{SphericalSet, TropicalRegion};
use tropos_core::{Error, Result};

const HALF: f64 = 3.5;
const SCALE: f64 = 60.0;
const SIZE: f64 = 2.0 * HALF * SCALE;

fn px(x: f64) -> String {
    format!("{:.3}", SIZE / 2.0 + SCALE * x)
}

fn py(y: f64) -> String {
    format!("{:.3}", SIZE / 2.0 - SCALE * y)
}

fn header() -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" \
         viewBox=\"0 0 {s} {s}\">\n\
         <rect width=\"{s}\" height=\"{s}\" fill=\"white\"/>\n\
         <line x1=\"0\" y1=\"{m}\" x2=\"{s}\" y2=\"{m}\" stroke=\"black\" \
         stroke-dasharray=\"6,4\" stroke-width=\"1\"/>\n\
         <line x1=\"{m}\" y1=\"0\" x2=\"{m}\" y2=\"{s}\" stroke=\"black\" \
         stroke-dasharray=\"6,4\" stroke-width=\"1\"/>\n",
        s = SIZE,
        m = SIZE / 2.0
    )
}

fn rat_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("viewport-sized rational")
}

/// Viewport box `[-3.5, 3.5]^2` as closed rational constraints.
fn box_constraints() -> Vec<Constraint> {
    let h = BigRational::new(BigInt::from(7), BigInt::from(2));
    [
        (vec![1i64, 0], h.clone()),
        (vec![-1, 0], h.clone()),
        (vec![0, 1], h.clone()),
        (vec![0, -1], h),
    ]
    .into_iter()
    .map(|(c, k)| {
        Constraint::new(
            c.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect(),
            k,
            Rel::Ge,
        )
    })
    .collect()
}

/// Closure of the constraint: strict inequalities are drawn as their closure.
fn closed(c: &Constraint) -> Constraint {
    Constraint::new(
        c.coeffs.clone(),
        c.constant.clone(),
        if c.rel == Rel::Gt { Rel::Ge } else { c.rel },
    )
}

/// All vertices of the closed cell clipped to the viewport box.
fn clipped_vertices(cell: &Polyhedron) -> Vec<(BigRational, BigRational)> {
    let mut cs: Vec<Constraint> = cell.constraints.iter().map(closed).collect();
    cs.extend(box_constraints());
    let closure = Polyhedron::new(2, cs.clone());
    let mut verts: Vec<(BigRational, BigRational)> = vec![];
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            let (a, b) = (&cs[i], &cs[j]);
            let det = &a.coeffs[0] * &b.coeffs[1] - &a.coeffs[1] * &b.coeffs[0];
            if det.is_zero() {
                continue;
            }
            let x = (-&a.constant * &b.coeffs[1] - &a.coeffs[1] * -&b.constant) / &det;
            let y = (&a.coeffs[0] * -&b.constant - -&a.constant * &b.coeffs[0]) / &det;
            if closure.contains(&[x.clone(), y.clone()]) && !verts.contains(&(x.clone(), y.clone()))
            {
                verts.push((x, y));
            }
        }
    }
    verts
}

fn collinear(verts: &[(BigRational, BigRational)]) -> bool {
    if verts.len() < 3 {
        return true;
    }
    let (x0, y0) = &verts[0];
    let (x1, y1) = &verts[1];
    verts[2..].iter().all(|(x, y)| {
        ((x1 - x0) * (y - y0) - (y1 - y0) * (x - x0)).is_zero()
    })
}

fn draw_cell(out: &mut String, cell: &Polyhedron) {
    let verts = clipped_vertices(cell);
    if verts.is_empty() {
        return;
    }
    if verts.len() == 1 {
        let (x, y) = &verts[0];
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"blue\"/>\n",
            px(rat_f64(x)),
            py(rat_f64(y))
        ));
        return;
    }
    if collinear(&verts) {
        // stroke the segment between the two extreme vertices
        let mut sorted = verts.clone();
        sorted.sort();
        let (x0, y0) = sorted.first().unwrap();
        let (x1, y1) = sorted.last().unwrap();
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"blue\" stroke-width=\"3\"/>\n",
            px(rat_f64(x0)),
            py(rat_f64(y0)),
            px(rat_f64(x1)),
            py(rat_f64(y1))
        ));
        return;
    }
    // polygon: sort vertices by angle about the centroid
    let n = verts.len() as f64;
    let (cx, cy) = verts.iter().fold((0.0, 0.0), |(sx, sy), (x, y)| {
        (sx + rat_f64(x) / n, sy + rat_f64(y) / n)
    });
    let mut pts: Vec<(f64, f64)> = verts.iter().map(|(x, y)| (rat_f64(x), rat_f64(y))).collect();
    pts.sort_by(|a, b| {
        let aa = (a.1 - cy).atan2(a.0 - cx);
        let bb = (b.1 - cy).atan2(b.0 - cx);
        aa.partial_cmp(&bb).unwrap()
    });
    let path: Vec<String> = pts.iter().map(|(x, y)| format!("{},{}", px(*x), py(*y))).collect();
    out.push_str(&format!(
        "<polygon points=\"{}\" fill=\"#9ecbff\" fill-opacity=\"0.5\" stroke=\"none\"/>\n",
        path.join(" ")
    ));
}

/// Render a planar tropical region in the fixed viewport.
pub fn render_region(r: &TropicalRegion) -> Result<String> {
    if r.dim != 2 {
        return Err(Error::Unsupported(format!(
            "svg rendering needs a planar region, got dimension {}",
            r.dim
        )));
    }
    let mut out = header();
    // fill 2-cells first so rays stay visible on top
    let mut cells: Vec<&Polyhedron> = r.cells.iter().map(|c| &c.poly).collect();
    cells.sort_by_key(|p| std::cmp::Reverse(p.dimension().unwrap_or(0)));
    for cell in cells {
        draw_cell(&mut out, cell);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn dir_point(d: &Dir) -> (f64, f64) {
    let x = d.x.to_f64().expect("small direction");
    let y = d.y.to_f64().expect("small direction");
    let norm = (x * x + y * y).sqrt();
    (2.0 * x / norm, 2.0 * y / norm)
}

fn endpoint_marker(out: &mut String, d: &Dir, closed: bool) {
    let (x, y) = dir_point(d);
    if closed {
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"blue\"/>\n",
            px(x),
            py(y)
        ));
    } else {
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"white\" stroke=\"blue\" stroke-width=\"2\"/>\n",
            px(x),
            py(y)
        ));
    }
}

/// Render a circle set in the fixed viewport (base circle of radius 2).
pub fn render_sphere(s: &SphericalSet) -> Result<String> {
    let SphericalSet::Dim2(c) = s else {
        return Err(Error::Unsupported(format!(
            "svg rendering needs a planar sphere set, got dimension {}",
            s.dim()
        )));
    };
    let mut out = header();
    out.push_str(&format!(
        "<circle cx=\"{m}\" cy=\"{m}\" r=\"{r}\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n",
        m = SIZE / 2.0,
        r = 2.0 * SCALE
    ));
    if c.full {
        out.push_str(&format!(
            "<circle cx=\"{m}\" cy=\"{m}\" r=\"{r}\" fill=\"none\" stroke=\"blue\" stroke-width=\"3\"/>\n",
            m = SIZE / 2.0,
            r = 2.0 * SCALE
        ));
        out.push_str("</svg>\n");
        return Ok(out);
    }
    for item in &c.items {
        match item {
            Item::Point(p) => endpoint_marker(&mut out, p, true),
            Item::Arc(a) => {
                if a.start == a.end {
                    // full turn with one boundary direction
                    out.push_str(&format!(
                        "<circle cx=\"{m}\" cy=\"{m}\" r=\"{r}\" fill=\"none\" stroke=\"blue\" stroke-width=\"3\"/>\n",
                        m = SIZE / 2.0,
                        r = 2.0 * SCALE
                    ));
                    endpoint_marker(&mut out, &a.start, a.start_closed || a.end_closed);
                    continue;
                }
                let (sx, sy) = dir_point(&a.start);
                let (ex, ey) = dir_point(&a.end);
                let a0 = sy.atan2(sx);
                let a1 = ey.atan2(ex);
                let extent = (a1 - a0).rem_euclid(2.0 * std::f64::consts::PI);
                let large = if extent > std::f64::consts::PI { 1 } else { 0 };
                // counterclockwise in math coordinates is sweep 0 after the
                // y-axis flip
                out.push_str(&format!(
                    "<path d=\"M {} {} A {r} {r} 0 {large} 0 {} {}\" fill=\"none\" stroke=\"blue\" stroke-width=\"3\"/>\n",
                    px(sx),
                    py(sy),
                    px(ex),
                    py(ey),
                    r = 2.0 * SCALE
                ));
                endpoint_marker(&mut out, &a.start, a.start_closed);
                endpoint_marker(&mut out, &a.end, a.end_closed);
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
