//! Static SVG pictures of rank-2 fans and stereographic projections of rank-3 fans.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::partition::Partition;

const SIZE: f64 = 400.0;
const PALETTE: [&str; 10] =
    ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"];

fn ray_f64(fan: &Fan, r: usize) -> Vec<f64> {
    let v: Vec<f64> = fan.rays()[r].iter().map(|x| x.to_f64().unwrap_or(0.0)).collect();
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / n).collect()
}

fn color(partition: Option<&Partition>, face: usize) -> &'static str {
    match partition {
        Some(p) if p.block(p.block_of(face)).len() > 1 => PALETTE[p.block_of(face) % PALETTE.len()],
        _ => "#000000",
    }
}

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
}

/// Rays of a planar fan drawn from the origin; rays in a common block share a color.
pub fn render_rank2(fan: &Fan, partition: Option<&Partition>) -> Result<String> {
    if fan.dim() != 2 {
        return Err(Error::NotRank2);
    }
    let c = SIZE / 2.0;
    let r = SIZE * 0.4;
    let mut out = String::new();
    header(&mut out);
    for i in 0..fan.rays().len() {
        let v = ray_f64(fan, i);
        let face = fan.id_of(&[i])?;
        let (x, y) = (c + r * v[0], c - r * v[1]);
        let _ = writeln!(
            out,
            "<line x1=\"{c:.2}\" y1=\"{c:.2}\" x2=\"{x:.2}\" y2=\"{y:.2}\" stroke=\"{}\" stroke-width=\"2\"/>",
            color(partition, face)
        );
        let label: Vec<String> = fan.rays()[i].iter().map(|x| x.to_string()).collect();
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">s{} ({})</text>",
            c + (r + 16.0) * v[0],
            c - (r + 16.0) * v[1] + 4.0,
            i + 1,
            label.join(",")
        );
    }
    for (k, ch) in fan.chambers().into_iter().enumerate() {
        let a = ray_f64(fan, fan.face(ch)[0]);
        let b = ray_f64(fan, fan.face(ch)[1]);
        let m = [a[0] + b[0], a[1] + b[1]];
        let n = (m[0] * m[0] + m[1] * m[1]).sqrt().max(1e-9);
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" fill=\"{}\" text-anchor=\"middle\">t{}</text>",
            c + r * 0.55 * m[0] / n,
            c - r * 0.55 * m[1] / n,
            color(partition, ch),
            k + 1
        );
    }
    let _ = writeln!(out, "<circle cx=\"{c:.2}\" cy=\"{c:.2}\" r=\"3\" fill=\"black\"/>\n</svg>");
    Ok(out)
}

/// Walls of a rank-3 fan drawn as arcs on the unit sphere, projected stereographically
/// from the direction `from` onto the plane orthogonal to it.
pub fn render_stereographic(fan: &Fan, partition: Option<&Partition>, from: &[f64]) -> Result<String> {
    if fan.dim() != 3 || from.len() != 3 {
        return Err(Error::DimensionMismatch(3, fan.dim()));
    }
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let pn = norm(from);
    if pn == 0.0 {
        return Err(Error::ZeroVector);
    }
    let p: Vec<f64> = from.iter().map(|x| x / pn).collect();
    let seed = if p[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let d = seed.iter().zip(&p).map(|(a, b)| a * b).sum::<f64>();
    let e1: Vec<f64> = (0..3).map(|i| seed[i] - d * p[i]).collect();
    let e1n = norm(&e1);
    let e1: Vec<f64> = e1.iter().map(|x| x / e1n).collect();
    let e2 = [p[1] * e1[2] - p[2] * e1[1], p[2] * e1[0] - p[0] * e1[2], p[0] * e1[1] - p[1] * e1[0]];
    let project = |u: &[f64]| -> Option<(f64, f64)> {
        let up = u.iter().zip(&p).map(|(a, b)| a * b).sum::<f64>();
        if 1.0 - up < 1e-6 {
            return None;
        }
        let x = u.iter().zip(&e1).map(|(a, b)| a * b).sum::<f64>() / (1.0 - up);
        let y = u.iter().zip(&e2).map(|(a, b)| a * b).sum::<f64>() / (1.0 - up);
        Some((x, y))
    };
    let scale = SIZE / 10.0;
    let c = SIZE / 2.0;
    let mut out = String::new();
    header(&mut out);
    let _ = writeln!(out, "<circle cx=\"{c:.2}\" cy=\"{c:.2}\" r=\"{scale:.2}\" fill=\"none\" stroke=\"#cccccc\"/>");
    for w in fan.walls() {
        let a = ray_f64(fan, fan.face(w)[0]);
        let b = ray_f64(fan, fan.face(w)[1]);
        let mut pts = Vec::new();
        for k in 0..=32 {
            let t = k as f64 / 32.0;
            let v: Vec<f64> = (0..3).map(|i| (1.0 - t) * a[i] + t * b[i]).collect();
            let vn = norm(&v);
            let u: Vec<f64> = v.iter().map(|x| x / vn).collect();
            if let Some((x, y)) = project(&u) {
                pts.push(format!("{:.2},{:.2}", c + scale * x, c - scale * y));
            }
        }
        let _ = writeln!(
            out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>",
            pts.join(" "),
            color(partition, w)
        );
    }
    for i in 0..fan.rays().len() {
        if let Some((x, y)) = project(&ray_f64(fan, i)) {
            let _ = writeln!(out, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"black\"/>", c + scale * x, c - scale * y);
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{fan_octants, fan_sq, partition_torus};

    #[test]
    fn svg_shapes() {
        let fan = fan_sq();
        let s = render_rank2(&fan, Some(&partition_torus(&fan))).unwrap();
        assert_eq!(s.matches("<line").count(), 4);
        assert!(s.trim_end().ends_with("</svg>"));
        let o = fan_octants();
        let t = render_stereographic(&o, None, &[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(t.matches("<polyline").count(), 12);
        assert!(render_rank2(&o, None).is_err());
    }
}
