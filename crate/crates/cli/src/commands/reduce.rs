use effshift_core::engine::{
    disjoint_separation_radius, product_colanguage, union_colanguage, Separation, Side, UnionEy,
};
use effshift_core::grid::Pattern;
use effshift_core::streams::{CoLanguage, Enumeration};
use effshift_core::zoo::{product_shift, union_shift};
use effshift_core::{Result, ShiftError};

use super::{check_budget, load_shift, schedule_config};
use crate::args::SideArg;
use crate::certs::Codec;
use crate::report::Report;

fn rows(report: &mut Report, codec: &Codec, emitted: &[Pattern], max_len: usize) {
    for p in emitted.iter().filter(|p| p.span() <= max_len) {
        report.row(vec![codec.pattern(p).into(), p.span().into()]);
    }
}

pub(crate) fn product(left: &str, right: &str, side: SideArg, budget: u64, max_len: usize) -> Result<Report> {
    check_budget(budget)?;
    let (x, y) = (load_shift(left)?, load_shift(right)?);
    let xy = product_shift(&x, &y)?;
    let co = CoLanguage::new(&xy.presentation, schedule_config()?);
    let (side, factor) = match side {
        SideArg::Left => (Side::Left, &x),
        SideArg::Right => (Side::Right, &y),
    };
    let mut e = product_colanguage(co, side, x.alphabet().len(), y.alphabet().len());
    e.run(budget);
    let mut report = Report::new("product", &["pattern", "span"]);
    report.set("product", xy.label.clone());
    report.set("factor", factor.label.clone());
    report.set("spent", e.spent());
    report.set("emitted", e.emitted().len());
    let codec = Codec {
        pres: &factor.presentation,
    };
    rows(&mut report, &codec, e.emitted(), max_len);
    Ok(report)
}

pub(crate) fn union(left: &str, right: &str, n_max: usize, budget: u64, max_len: usize) -> Result<Report> {
    check_budget(budget)?;
    let (x, y) = (load_shift(left)?, load_shift(right)?);
    let group = x.group();
    let k = x.alphabet().len();
    let sep = disjoint_separation_radius(&x, &y, &group, k, n_max)?;
    let radius = match sep {
        Separation::Radius(r) => r,
        Separation::NotSeparated { n_max } => {
            return Err(ShiftError::Precondition(format!(
                "`{}` and `{}` share ball patterns up to radius {n_max}",
                x.label, y.label
            )))
        }
    };
    let xy = union_shift(&x, &y)?;
    let ey = UnionEy::new(&x, &y, &group, sep)?;
    let co = CoLanguage::new(&xy.presentation, schedule_config()?);
    let mut e = union_colanguage(co, ey, group, k);
    e.run(budget);
    let mut report = Report::new("union", &["pattern", "span"]);
    report.set("union", xy.label.clone());
    report.set("separation_radius", radius);
    report.set("spent", e.spent());
    report.set("emitted", e.emitted().len());
    let codec = Codec { pres: &x.presentation };
    rows(&mut report, &codec, e.emitted(), max_len);
    Ok(report)
}
