//! Deterministic SVG figures of embedding circles and their axes.
//!
//! Math coordinates put the embedding circle for `n` at center `(n/2, 0)`
//! with radius `n/2`; the screen y-axis is flipped. Every number is written
//! with six decimals and elements are emitted in a fixed order, so equal
//! specs give byte-identical output.
//!
//! Styles: embedding circles solid black, real axes solid, conjugate axes
//! dashed, degenerate axes dotted, deduced axes bold.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::ccop::{CAxis, CPoint};
use crate::error::{Error, Result};
use crate::expansion::ExpansionCertificate;

pub const PADDING: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FigureKind {
    SingleCircle,
    BigBang,
    Expansion,
}

impl FigureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FigureKind::SingleCircle => "circle",
            FigureKind::BigBang => "big-bang",
            FigureKind::Expansion => "expansion",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "circle" | "single_circle" | "single-circle" => Some(FigureKind::SingleCircle),
            "big-bang" | "big_bang" | "bigbang" => Some(FigureKind::BigBang),
            "expansion" => Some(FigureKind::Expansion),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Canvas {
    pub width: f64,
    pub height: f64,
}

#[derive(Debug, Clone)]
pub struct FigureSpec {
    pub kind: FigureKind,
    pub generators: Vec<u64>,
    pub highlighted_axes: Vec<CAxis>,
    pub certificates: Vec<ExpansionCertificate>,
    pub canvas: Canvas,
    /// Screen units per integer.
    pub scale: f64,
}

fn fitted_canvas(generators: &[u64], scale: f64) -> Canvas {
    let max = generators.iter().copied().max().unwrap_or(2) as f64;
    let side = max * scale + 2.0 * PADDING;
    Canvas {
        width: side,
        height: side,
    }
}

impl FigureSpec {
    pub fn single_circle(n: u64, axes: Vec<CAxis>, scale: f64) -> Self {
        FigureSpec {
            kind: FigureKind::SingleCircle,
            generators: vec![n],
            highlighted_axes: axes,
            certificates: Vec::new(),
            canvas: fitted_canvas(&[n], scale),
            scale,
        }
    }

    pub fn big_bang(generators: Vec<u64>, scale: f64) -> Self {
        let canvas = fitted_canvas(&generators, scale);
        FigureSpec {
            kind: FigureKind::BigBang,
            generators,
            highlighted_axes: Vec::new(),
            certificates: Vec::new(),
            canvas,
            scale,
        }
    }

    /// Circles for `n`, `n+t` and `n+s` of every certificate.
    pub fn expansion(certificates: Vec<ExpansionCertificate>, scale: f64) -> Self {
        let mut generators: Vec<u64> = certificates
            .iter()
            .flat_map(|c| [c.n(), c.n() + c.t(), c.n() + c.s()])
            .collect();
        generators.sort_unstable();
        generators.dedup();
        let canvas = fitted_canvas(&generators, scale);
        FigureSpec {
            kind: FigureKind::Expansion,
            generators,
            highlighted_axes: Vec::new(),
            certificates,
            canvas,
            scale,
        }
    }

    pub fn max_generator(&self) -> u64 {
        self.generators.iter().copied().max().unwrap_or(0)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidFigure(msg));
        if self.generators.is_empty() {
            return bad("no generators listed".into());
        }
        if let Some(&n) = self.generators.iter().find(|&&n| n < 2) {
            return bad(format!("generator {n} is below 2"));
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return bad(format!("scale {} must be positive", self.scale));
        }
        for a in &self.highlighted_axes {
            if !self.generators.contains(&a.n()) {
                return bad(format!(
                    "axis {}+{} belongs to unlisted generator {}",
                    a.low(),
                    a.high(),
                    a.n()
                ));
            }
        }
        for c in &self.certificates {
            for g in [c.n(), c.n() + c.t(), c.n() + c.s()] {
                if !self.generators.contains(&g) {
                    return bad(format!("certificate refers to unlisted generator {g}"));
                }
            }
        }
        if self.kind == FigureKind::Expansion && self.certificates.is_empty() {
            return bad("expansion figure needs at least one certificate".into());
        }
        let needed = self.max_generator() as f64 * self.scale;
        if self.canvas.width < needed || self.canvas.height < needed {
            return bad(format!(
                "canvas {}x{} cannot hold a circle of diameter {needed}",
                self.canvas.width, self.canvas.height
            ));
        }
        Ok(())
    }
}

/// Fixed-precision number formatting; never prints `-0.000000`.
pub fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisRole {
    Plain,
    WitnessZ,
    WitnessW,
    Deduced,
}

impl AxisRole {
    fn color(self) -> &'static str {
        match self {
            AxisRole::Plain => "#1f4e9c",
            AxisRole::WitnessZ => "#1f4e9c",
            AxisRole::WitnessW => "#2e7d32",
            AxisRole::Deduced => "#b22222",
        }
    }

    fn class(self) -> &'static str {
        match self {
            AxisRole::Plain => "axis",
            AxisRole::WitnessZ => "witness-z",
            AxisRole::WitnessW => "witness-w",
            AxisRole::Deduced => "deduced",
        }
    }
}

/// SVG document under construction, with the math-to-screen transform.
pub struct Svg {
    body: String,
    origin_x: f64,
    origin_y: f64,
    scale: f64,
    width: f64,
    height: f64,
}

impl Svg {
    pub fn new(spec: &FigureSpec) -> Self {
        let span = spec.max_generator() as f64 * spec.scale;
        Svg {
            body: String::new(),
            origin_x: (spec.canvas.width - span) / 2.0,
            origin_y: spec.canvas.height / 2.0,
            scale: spec.scale,
            width: spec.canvas.width,
            height: spec.canvas.height,
        }
    }

    pub fn screen(&self, re: f64, im: f64) -> (f64, f64) {
        (
            self.origin_x + re * self.scale,
            self.origin_y - im * self.scale,
        )
    }

    pub fn real_line(&mut self) {
        let y = num(self.origin_y);
        let _ = writeln!(
            self.body,
            r##"<line class="real-line" x1="0.000000" y1="{y}" x2="{}" y2="{y}" stroke="#9e9e9e" stroke-width="0.500000"/>"##,
            num(self.width)
        );
    }

    pub fn embedding_circle(&mut self, n: u64) {
        let (cx, cy) = self.screen(n as f64 / 2.0, 0.0);
        let r = n as f64 / 2.0 * self.scale;
        let _ = writeln!(
            self.body,
            r##"<circle class="embedding" data-n="{n}" cx="{}" cy="{}" r="{}" fill="none" stroke="#000000" stroke-width="1.000000"/>"##,
            num(cx),
            num(cy),
            num(r)
        );
    }

    pub fn label(&mut self, n: u64) {
        let (x, y) = self.screen(n as f64, 0.0);
        let _ = writeln!(
            self.body,
            r##"<text x="{}" y="{}" font-family="sans-serif" font-size="10" fill="#000000">{n}</text>"##,
            num(x + 2.0),
            num(y - 4.0)
        );
    }

    pub fn marker(&mut self, p: &CPoint, color: &str) {
        let (x, y) = p.coords();
        let (sx, sy) = self.screen(x, y);
        let _ = writeln!(
            self.body,
            r#"<circle class="point" cx="{}" cy="{}" r="2.500000" fill="{color}"/>"#,
            num(sx),
            num(sy)
        );
    }

    pub fn axis(&mut self, a: &CAxis, role: AxisRole) {
        let (x1, y1) = a.p().coords();
        let (x2, y2) = a.q().coords();
        let (sx1, sy1) = self.screen(x1, y1);
        let (sx2, sy2) = self.screen(x2, y2);
        let width = if role == AxisRole::Deduced {
            "3.000000"
        } else {
            "1.500000"
        };
        let dash = if a.is_degenerate() {
            r#" stroke-dasharray="2 3""#
        } else if a.is_conjugate_copy() {
            r#" stroke-dasharray="6 4""#
        } else {
            ""
        };
        let _ = writeln!(
            self.body,
            r#"<line class="{}" data-n="{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="{width}"{dash}/>"#,
            role.class(),
            a.n(),
            num(sx1),
            num(sy1),
            num(sx2),
            num(sy2),
            role.color()
        );
        self.marker(&a.p(), role.color());
        self.marker(&a.q(), role.color());
    }

    pub fn finish(self) -> Vec<u8> {
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = num(self.width),
            h = num(self.height)
        );
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out.into_bytes()
    }
}

/// One figure type. Renderers are looked up by [`FigureKind`] name.
pub trait FigureRenderer: Send + Sync {
    fn kind(&self) -> FigureKind;

    fn draw(&self, spec: &FigureSpec, svg: &mut Svg);
}

struct SingleCircleRenderer;

impl FigureRenderer for SingleCircleRenderer {
    fn kind(&self) -> FigureKind {
        FigureKind::SingleCircle
    }

    fn draw(&self, spec: &FigureSpec, svg: &mut Svg) {
        svg.real_line();
        for &n in &spec.generators {
            svg.embedding_circle(n);
            svg.label(n);
        }
        for a in &spec.highlighted_axes {
            svg.axis(a, AxisRole::Plain);
        }
    }
}

struct BigBangRenderer;

impl FigureRenderer for BigBangRenderer {
    fn kind(&self) -> FigureKind {
        FigureKind::BigBang
    }

    fn draw(&self, spec: &FigureSpec, svg: &mut Svg) {
        svg.real_line();
        let mut gens = spec.generators.clone();
        gens.sort_unstable();
        gens.dedup();
        // largest first so smaller circles sit on top
        for &n in gens.iter().rev() {
            svg.embedding_circle(n);
            svg.label(n);
        }
        for a in &spec.highlighted_axes {
            svg.axis(a, AxisRole::Plain);
        }
        let (ox, oy) = svg.screen(0.0, 0.0);
        let _ = writeln!(
            svg.body,
            r##"<circle class="origin" cx="{}" cy="{}" r="3.000000" fill="#b22222"/>"##,
            num(ox),
            num(oy)
        );
    }
}

struct ExpansionRenderer;

impl FigureRenderer for ExpansionRenderer {
    fn kind(&self) -> FigureKind {
        FigureKind::Expansion
    }

    fn draw(&self, spec: &FigureSpec, svg: &mut Svg) {
        svg.real_line();
        for &n in spec.generators.iter().rev() {
            svg.embedding_circle(n);
            svg.label(n);
        }
        for a in &spec.highlighted_axes {
            svg.axis(a, AxisRole::Plain);
        }
        for c in &spec.certificates {
            svg.axis(&c.witness_z(), AxisRole::WitnessZ);
            svg.axis(&c.witness_w(), AxisRole::WitnessW);
            svg.axis(&c.deduced(), AxisRole::Deduced);
        }
    }
}

#[derive(Clone)]
pub struct RendererRegistry {
    renderers: BTreeMap<FigureKind, Arc<dyn FigureRenderer>>,
}

impl RendererRegistry {
    pub fn with_builtins() -> Self {
        let mut reg = RendererRegistry {
            renderers: BTreeMap::new(),
        };
        reg.register(Arc::new(SingleCircleRenderer));
        reg.register(Arc::new(BigBangRenderer));
        reg.register(Arc::new(ExpansionRenderer));
        reg
    }

    /// Replaces any renderer already registered for the same kind.
    pub fn register(&mut self, renderer: Arc<dyn FigureRenderer>) {
        self.renderers.insert(renderer.kind(), renderer);
    }

    pub fn get(&self, kind: FigureKind) -> Option<Arc<dyn FigureRenderer>> {
        self.renderers.get(&kind).cloned()
    }

    pub fn render(&self, spec: &FigureSpec) -> Result<Vec<u8>> {
        spec.validate()?;
        let renderer = self.get(spec.kind).ok_or_else(|| {
            Error::InvalidFigure(format!("no renderer for `{}`", spec.kind.as_str()))
        })?;
        let mut svg = Svg::new(spec);
        renderer.draw(spec, &mut svg);
        Ok(svg.finish())
    }
}

impl Default for RendererRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

pub fn render_svg(spec: &FigureSpec) -> Result<Vec<u8>> {
    RendererRegistry::with_builtins().render(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseset::BaseSet;
    use crate::ccop::Sign;
    use crate::expansion::{expand, ExpansionQuery};

    fn attr(tag: &str, name: &str) -> f64 {
        let key = format!(" {name}=\"");
        let start = tag.find(&key).unwrap() + key.len();
        let end = start + tag[start..].find('"').unwrap();
        tag[start..end].parse().unwrap()
    }

    fn tags<'a>(svg: &'a str, prefix: &str) -> Vec<&'a str> {
        svg.lines().filter(|l| l.starts_with(prefix)).collect()
    }

    #[test]
    fn single_circle_geometry() {
        let axis = CAxis::through(CPoint::new(10, 3, Sign::Plus).unwrap());
        let spec = FigureSpec::single_circle(10, vec![axis], 10.0);
        let svg = String::from_utf8(render_svg(&spec).unwrap()).unwrap();
        let circles = tags(&svg, "<circle class=\"embedding\"");
        assert_eq!(circles.len(), 1);
        assert_eq!(attr(circles[0], "r"), 50.0);
        assert_eq!(attr(circles[0], "cx"), PADDING + 50.0);
        let lines = tags(&svg, "<line class=\"axis\"");
        assert_eq!(lines.len(), 1);
        let l = lines[0];
        let len = ((attr(l, "x1") - attr(l, "x2")).powi(2)
            + (attr(l, "y1") - attr(l, "y2")).powi(2))
        .sqrt();
        assert!((len - 100.0).abs() < 1e-5);
        assert!(!l.contains("dasharray"));
    }

    #[test]
    fn axis_styles() {
        let p = CPoint::new(10, 3, Sign::Plus).unwrap();
        let center = CPoint::new(10, 5, Sign::Plus).unwrap();
        let spec = FigureSpec::single_circle(
            10,
            vec![
                CAxis::through(p),
                CAxis::through(p.conjugate()),
                CAxis::through(center),
            ],
            10.0,
        );
        let svg = String::from_utf8(render_svg(&spec).unwrap()).unwrap();
        let lines = tags(&svg, "<line class=\"axis\"");
        assert!(!lines[0].contains("dasharray"));
        assert!(lines[1].contains(r#"stroke-dasharray="6 4""#));
        assert!(lines[2].contains(r#"stroke-dasharray="2 3""#));
    }

    #[test]
    fn big_bang_circles_touch_origin() {
        let spec = FigureSpec::big_bang(vec![2, 4, 6, 8], 10.0);
        let svg = String::from_utf8(render_svg(&spec).unwrap()).unwrap();
        let circles = tags(&svg, "<circle class=\"embedding\"");
        assert_eq!(circles.len(), 4);
        let lefts: Vec<String> = circles
            .iter()
            .map(|c| num(attr(c, "cx") - attr(c, "r")))
            .collect();
        assert!(lefts.iter().all(|l| *l == num(PADDING)));
        for c in &circles {
            assert_eq!(num(attr(c, "cy")), num(spec.canvas.height / 2.0));
        }
    }

    #[test]
    fn expansion_figure_has_three_circles() {
        let nat = BaseSet::naturals();
        let primes = BaseSet::primes(100).unwrap();
        let q = ExpansionQuery::new(30, 8, 4, &nat, &primes).unwrap();
        let certs: Vec<_> = expand(&q)
            .unwrap()
            .into_iter()
            .filter(|c| c.z_low() == 7)
            .collect();
        let spec = FigureSpec::expansion(certs, 8.0);
        assert_eq!(spec.generators, vec![30, 34, 38]);
        let svg = String::from_utf8(render_svg(&spec).unwrap()).unwrap();
        assert_eq!(tags(&svg, "<circle class=\"embedding\"").len(), 3);
        let deduced = tags(&svg, "<line class=\"deduced\"");
        assert_eq!(deduced.len(), 1);
        assert!(deduced[0].contains(r#"stroke-width="3.000000""#));
        assert_eq!(tags(&svg, "<line class=\"witness-").len(), 2);
    }

    #[test]
    fn rendering_is_deterministic() {
        let spec = FigureSpec::big_bang(vec![2, 4, 6, 8], 10.0);
        assert_eq!(render_svg(&spec).unwrap(), render_svg(&spec).unwrap());
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let axis = CAxis::through(CPoint::new(12, 3, Sign::Plus).unwrap());
        let spec = FigureSpec::single_circle(10, vec![axis], 10.0);
        assert!(matches!(render_svg(&spec), Err(Error::InvalidFigure(_))));

        let mut spec = FigureSpec::big_bang(vec![2, 40], 10.0);
        spec.canvas.width = 100.0;
        assert!(matches!(render_svg(&spec), Err(Error::InvalidFigure(_))));

        assert!(render_svg(&FigureSpec::big_bang(vec![], 10.0)).is_err());
        assert!(render_svg(&FigureSpec::big_bang(vec![1, 4], 10.0)).is_err());
        assert!(render_svg(&FigureSpec::expansion(vec![], 10.0)).is_err());
        assert!(render_svg(&FigureSpec::big_bang(vec![4], 0.0)).is_err());
    }

    #[test]
    fn number_formatting() {
        assert_eq!(num(-0.0000001), "0.000000");
        assert_eq!(num(1.5), "1.500000");
        assert_eq!(num(-2.25), "-2.250000");
    }
}
