use std::fmt::Write;

const UNIT: f64 = 40.0;
const MARGIN: f64 = 30.0;

/// HN polygon through `vertices`, given in (rank, degree) coordinates.
///
/// The `points` attribute holds the vertices verbatim; a group transform
/// scales them and flips the degree axis upwards.
pub fn hn_polygon_svg(vertices: &[(i64, i64)]) -> String {
    let xs = vertices.iter().map(|v| v.0).chain([0]);
    let ys = vertices.iter().map(|v| v.1).chain([0]);
    let (x_max, y_min, y_max) = (
        xs.max().unwrap_or(0) as f64,
        ys.clone().min().unwrap_or(0) as f64,
        ys.max().unwrap_or(0) as f64,
    );
    let width = x_max.max(1.0) * UNIT + 2.0 * MARGIN;
    let height = (y_max - y_min).max(1.0) * UNIT + 2.0 * MARGIN;
    let points: Vec<String> = vertices.iter().map(|(x, y)| format!("{x},{y}")).collect();

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        r#"  <g transform="translate({MARGIN},{}) scale({UNIT},-{UNIT})">"#,
        MARGIN + y_max * UNIT
    );
    let _ = writeln!(
        s,
        r#"    <line x1="0" y1="0" x2="{}" y2="0" stroke="gray" stroke-width="0.02"/>"#,
        x_max.max(1.0)
    );
    let _ = writeln!(
        s,
        r#"    <polygon class="hn" points="{}" fill="none" stroke="black" stroke-width="0.05"/>"#,
        points.join(" ")
    );
    for (x, y) in vertices {
        let _ = writeln!(s, r#"    <circle cx="{x}" cy="{y}" r="0.08"/>"#);
    }
    s.push_str("  </g>\n</svg>\n");
    s
}
