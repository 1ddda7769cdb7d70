//! One thin wrapper per command: resolve the section, call the library,
//! encode the result. With `verify`, the matching oracle runs as well.

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use super::problem::{positive, same_dim, ProblemError, ProblemFile};
use super::report::{self, Report, Status};
use crate::linalg::{self, CMatrix};
use crate::relation::LinearRelation;
use crate::tolerance::Tolerance;
use crate::{lss, mvproj, oracle, spline, weighted, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    RelationAnalyze,
    ProjBuild,
    ProjRepresent,
    LssSolve,
    W1w2Solve,
    Spline,
    Smooth,
    Shorted,
    Complementable,
    KreinClassify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::RelationAnalyze => "relation-analyze",
            Command::ProjBuild => "proj-build",
            Command::ProjRepresent => "proj-represent",
            Command::LssSolve => "lss-solve",
            Command::W1w2Solve => "w1w2-solve",
            Command::Spline => "spline",
            Command::Smooth => "smooth",
            Command::Shorted => "shorted",
            Command::Complementable => "complementable",
            Command::KreinClassify => "krein-classify",
        }
    }
}

struct Outcome {
    status: Status,
    results: Map<String, Value>,
    oracle_delta: Option<f64>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            status: Status::Ok,
            results: Map::new(),
            oracle_delta: None,
        }
    }

    fn put(&mut self, key: &str, value: Value) {
        self.results.insert(key.to_string(), value);
    }
}

fn section<T>(s: &Option<T>, cmd: Command) -> Result<&T, ProblemError> {
    s.as_ref()
        .ok_or_else(|| ProblemError::MissingSection(cmd.name().to_string()))
}

/// `(F; G)` split of a graph basis.
fn spanning_pair(r: &LinearRelation) -> (CMatrix, CMatrix) {
    let basis = r.graph().basis();
    (
        basis.rows(0, r.dim_in()).into_owned(),
        basis.rows(r.dim_in(), r.dim_out()).into_owned(),
    )
}

fn graph_distance(a: &LinearRelation, b: &LinearRelation) -> Result<f64, ProblemError> {
    Ok(a.graph().projector_distance(b.graph())?)
}

pub fn dispatch(
    cmd: Command,
    file: &ProblemFile,
    tol: &Tolerance,
    verify: bool,
) -> Result<Report, ProblemError> {
    let mut out = Outcome::new();
    match cmd {
        Command::RelationAnalyze => relation_analyze(file, tol, verify, &mut out)?,
        Command::ProjBuild => proj_build(file, tol, verify, &mut out)?,
        Command::ProjRepresent => proj_represent(file, tol, verify, &mut out)?,
        Command::LssSolve => lss_solve(file, tol, verify, &mut out)?,
        Command::W1w2Solve => w1w2(file, tol, verify, &mut out)?,
        Command::Spline => spline_cmd(file, tol, verify, &mut out)?,
        Command::Smooth => smooth(file, tol, verify, &mut out)?,
        Command::Shorted => shorted(file, tol, verify, &mut out)?,
        Command::Complementable => complementable(file, tol, verify, &mut out)?,
        Command::KreinClassify => krein(file, tol, verify, &mut out)?,
    }
    let mut diagnostics = Map::new();
    if let Some(delta) = out.oracle_delta {
        diagnostics.insert("oracle_delta".into(), json!(report::round(delta)));
    }
    Ok(Report {
        command: cmd.name().to_string(),
        status: out.status,
        tolerance: *tol,
        results: Value::Object(out.results),
        diagnostics: Value::Object(diagnostics),
    })
}

fn parts_json(r: &LinearRelation, tol: &Tolerance, out: &mut Outcome) {
    let parts = r.parts(tol);
    out.put("dom", report::subspace(&parts.dom));
    out.put("ran", report::subspace(&parts.ran));
    out.put("ker", report::subspace(&parts.ker));
    out.put("mul", report::subspace(&parts.mul));
}

fn relation_analyze(
    file: &ProblemFile,
    tol: &Tolerance,
    verify: bool,
    out: &mut Outcome,
) -> Result<(), ProblemError> {
    let sec = section(&file.relation_analyze, Command::RelationAnalyze)?;
    let (name, t) = file.relation("relation-analyze.relation", &sec.relation, tol)?;
    out.put("relation", report::relation(&t, tol));
    parts_json(&t, tol, out);
    out.put("adjoint", report::relation(&t.adjoint(tol), tol));
    if let Some(x) = &sec.apply {
        let (xname, x) = file.vector("relation-analyze.apply", x)?;
        same_dim(
            (&xname, x.len()),
            (&format!("{name} (input side)"), t.dim_in()),
        )?;
        let image = t.apply(&x, tol)?;
        if image.is_empty() {
            out.status = Status::NoSolution;
        }
        out.put("image", report::coset(&image));
    }
    if verify {
        let (f, g) = spanning_pair(&t);
        let p = t.parts(tol);
        let got = [p.dom.dim(), p.ran.dim(), p.ker.dim(), p.mul.dim()];
        let want = oracle::parts_dims(&f, &g, tol);
        let delta = got
            .iter()
            .zip(want)
            .map(|(a, b)| a.abs_diff(b))
            .max()
            .unwrap_or(0);
        out.oracle_delta = Some(delta as f64);
    }
    Ok(())
}

fn proj_build(
    file: &ProblemFile,
    tol: &Tolerance,
    verify: bool,
    out: &mut Outcome,
) -> Result<(), ProblemError> {
    let sec = section(&file.proj_build, Command::ProjBuild)?;
    let (mname, m) = file.subspace("proj-build.M", &sec.m, tol)?;
    let (nname, n) = file.subspace("proj-build.N", &sec.n, tol)?;
    same_dim((&mname, m.ambient()), (&nname, n.ambient()))?;
    let p = mvproj::make_pmn(&m, &n, tol)?;
    out.put("relation", report::relation(&p, tol));
    parts_json(&p, tol, out);
    let class = mvproj::classify(&p, tol)?;
    out.put("is_mvproj", json!(class.is_mvproj));
    let parts = mvproj::decompose(&p, tol)?;
    out.put(
        "decomposition",
        json!({
            "operator_part": report::relation(&parts.operator_part, tol),
            "mul_part": report::subspace(&parts.mul_part),
        }),
    );
    if let Some(x) = &sec.apply {
        let (xname, x) = file.vector("proj-build.apply", x)?;
        same_dim((&xname, x.len()), (&mname, m.ambient()))?;
        let image = p.apply(&x, tol)?;
        if image.is_empty() {
            out.status = Status::NoSolution;
        }
        out.put("image", report::coset(&image));
    }
    if verify {
        let square = p.compose(&p, tol)?;
        let delta = graph_distance(&square, &p)?
            .max(p.ran(tol).projector_distance(&m)?)
            .max(p.ker(tol).projector_distance(&n)?);
        out.oracle_delta = Some(delta);
    }
    Ok(())
}

fn blocks_json(b: &mvproj::BlockRep, tol: &Tolerance) -> Value {
    json!({
        "splitting": report::subspace(&b.splitting),
        "a": report::relation(&b.a, tol),
        "b": report::relation(&b.b, tol),
        "c": report::relation(&b.c, tol),
        "d": report::relation(&b.d, tol),
    })
}

fn proj_represent(
    file: &ProblemFile,
    tol: &Tolerance,
    verify: bool,
    out: &mut Outcome,
) -> Result<(), ProblemError> {
    use super::problem::ProjRepresent as P;
    let sec = section(&file.proj_represent, Command::ProjRepresent)?;
    match sec {
        P::Relation {
            relation,
            splitting,
        } => {
            let (tname, t) = file.relation("proj-represent.relation", relation, tol)?;
            let (sname, s) = file.subspace("proj-represent.splitting", splitting, tol)?;
            same_dim(
                (&format!("{tname} (input side)"), t.dim_in()),
                (&sname, s.ambient()),
            )?;
            same_dim(
                (&format!("{tname} (output side)"), t.dim_out()),
                (&sname, s.ambient()),
            )?;
            let ok = mvproj::representable(&t, &s, tol)?;
            out.put("mode", json!("relation"));
            out.put("representable", json!(ok));
            if ok {
                let blocks = mvproj::canonical_blocks(&t, &s, tol)?;
                out.put("blocks", blocks_json(&blocks, tol));
                if verify {
                    out.oracle_delta = Some(graph_distance(&blocks.generate(tol)?, &t)?);
                }
            } else if verify {
                out.oracle_delta = Some(0.0);
            }
        }
        P::Pair { m, n } => {
            let (mname, m) = file.subspace("proj-represent.M", m, tol)?;
            let (nname, n) = file.subspace("proj-represent.N", n, tol)?;
            same_dim((&mname, m.ambient()), (&nname, n.ambient()))?;
            let blocks = mvproj::assemble_representation(&m, &n, tol)?;
            let x = mvproj::coefficient_x(&m, &n, tol)?;
            out.put("mode", json!("pair"));
            out.put("x", report::relation(&x, tol));
            out.put("blocks", blocks_json(&blocks, tol));
            if verify {
                let p = mvproj::make_pmn(&m, &n, tol)?;
                let ando = mvproj::coefficient_x_ando(&m, &n, tol)?;
                let delta =
                    graph_distance(&blocks.generate(tol)?, &p)?.max(graph_distance(&x, &ando)?);
                out.oracle_delta = Some(delta);
            }
        }
        P::Super { m, s1, s2, x } => {
            let (mname, m) = file.subspace("proj-represent.M", m, tol)?;
            let (s1name, s1) = file.subspace("proj-represent.S1", s1, tol)?;
            let (s2name, s2) = file.subspace("proj-represent.S2", s2, tol)?;
            let (xname, x) = file.relation("proj-represent.x", x, tol)?;
            same_dim((&mname, m.ambient()), (&s1name, s1.ambient()))?;
            same_dim((&mname, m.ambient()), (&s2name, s2.ambient()))?;
            same_dim(
                (&mname, m.ambient()),
                (&format!("{xname} (input side)"), x.dim_in()),
            )?;
            same_dim(
                (&mname, m.ambient()),
                (&format!("{xname} (output side)"), x.dim_out()),
            )?;
            let built = mvproj::build_super(&m, &s1, &s2, &x, tol)?;
            out.put("mode", json!("super"));
            out.put("relation", report::relation(&built.relation, tol));
            out.put("is_idempotent", json!(built.is_idempotent));
            out.put("fixed", report::subspace(&built.canonical.fixed));
            out.put("kernel", report::subspace(&built.canonical.kernel));
            out.put("mul", report::subspace(&built.canonical.mul));
            out.put("blocks", blocks_json(&built.blocks, tol));
            if verify {
                let e = &built.relation;
                let squares = e.compose(e, tol)?.equals(e, tol)?;
                out.oracle_delta = Some(if squares == built.is_idempotent {
                    0.0
                } else {
                    1.0
                });
            }
        }
    }
    Ok(())
}

fn lss_solve(
    file: &ProblemFile,
    tol: &Tolerance,
    verify: bool,
    out: &mut Outcome,
) -> Result<(), ProblemError> {
    let sec = section(&file.lss_solve, Command::LssSolve)?;
    let (aname, a) = file.relation("lss-solve.relation", &sec.relation, tol)?;
    let (wname, w) = file.weight("lss-solve.weight", &sec.weight, tol)?;
    let (bname, b) = file.vector("lss-solve.b", &sec.b)?;
    same_dim(
        (&format!("{aname} (input side)"), a.dim_in()),
        (&format!("{aname} (output side)"), a.dim_out()),
    )?;
    same_dim((&wname, w.dim()), (&aname, a.dim_out()))?;
    same_dim((&bname, b.len()), (&aname, a.dim_out()))?;
    let problem = lss::LssProblem::new(a.clone(), w.clone(), b.clone())?;
    let sol = lss::solve(&problem, tol)?;
    if !sol.exists {
        out.status = Status::NoSolution;
    }
    out.put("exists", json!(sol.exists));
    out.put("min_value", sol.min_value.map_or(Value::Null, report::real));
    out.put(
        "witness",
        sol.witness.as_ref().map_or(Value::Null, report::vector),
    );
    out.put("solution_set", report::coset(&sol.solution_set));
    out.put("minimizing_outputs", report::coset(&sol.minimizing_outputs));
    if let Some(x0) = &sec.x0 {
        let (xname, x0) = file.vector("lss-solve.x0", x0)?;
        same_dim((&xname, x0.len()), (&aname, a.dim_in()))?;
        out.put(
            "normal_equation",
            json!(lss::check_normal(&problem, &x0, tol)?),
        );
    }
    if verify && sol.exists {
        let (f, g) = spanning_pair(&a);
        let (value, set) = oracle::wlss(&f, &g, w.matrix(), &b, tol);
        let delta = (value - sol.min_value.unwrap_or(f64::INFINITY))
            .abs()
            .max(set.distance_to(&sol.solution_set, tol));
        out.oracle_delta = Some(delta);
    }
    Ok(())
}

fn w1w2(
    file: &ProblemFile,
    tol: &Tolerance,
    verify: bool,
    out: &mut Outcome,
) -> Result<(), ProblemError> {
    let sec = section(&file.w1w2_solve, Command::W1w2Solve)?;
    let (aname, a) = file.relation("w1w2-solve.relation", &sec.relation, tol)?;
    let (w1name, w1) = file.weight("w1w2-solve.w1", &sec.w1, tol)?;
    let (w2name, w2) = file.weight("w1w2-solve.w2", &sec.w2, tol)?;
    let (bname, b) = file.vector("w1w2-solve.b", &sec.b)?;
    same_dim(
        (&format!("{aname} (input side)"), a.dim_in()),
        (&format!("{aname} (output side)"), a.dim_out()),
    )?;
    same_dim((&w1name, w1.dim()), (&aname, a.dim_out()))?;
    same_dim((&w2name, w2.dim()), (&aname, a.dim_in()))?;
    same_dim((&bname, b.len()), (&aname, a.dim_out()))?;
    match lss::w1w2_solve(&a, &w1, &w2, &b, tol) {
        Ok(set) => {
            out.put("solution_set", report::coset(&set));
            if verify {
                let (f, g) = spanning_pair(&a);
                let want = oracle::w1w2(&f, &g, w1.matrix(), w2.matrix(), &b, tol);
                out.oracle_delta = Some(want.distance_to(&set, tol));
            }
        }
        Err(Error::NoSolution(reason)) => {
            out.status = Status::NoSolution;
            out.put("solution_set", json!({ "empty": true }));
            out.put("reason", json!(reason));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn spline_problem(
    file: &ProblemFile,
    section_name: &str,
    sec: &super::problem::SplineSection,
) -> Result<spline::SplineProblem, ProblemError> {
    let (tname, t) = file.matrix(&format!("{}.T", section_name), &sec.t)?;
    let (vname, v) = file.matrix(&format!("{}.V", section_name), &sec.v)?;
    let (bname, b) = file.vector(&format!("{}.b", section_name), &sec.b)?;
    same_dim(
        (&format!("{tname} (columns)"), t.ncols()),
        (&format!("{vname} (columns)"), v.ncols()),
    )?;
    same_dim((&bname, b.len()), (&format!("{vname} (rows)"), v.nrows()))?;
    Ok(spline::SplineProblem::new(t, v, b)?)
}

fn spline_cmd(
    file: &ProblemFile,
    tol: &Tolerance,
    verify: bool,
    out: &mut Outcome,
) -> Result<(), ProblemError> {
    let sec = section(&file.spline, Command::Spline)?;
    let p = spline_problem(file, Command::Spline.name(), sec)?;
    let sol = spline::spline_solve(&p, tol)?;
    if !sol.exists {
        out.status = Status::NoSolution;
    }
    out.put("exists", json!(sol.exists));
    out.put("spline_set", report::coset(&sol.spline_set));
    out.put("min_value", sol.min_value.map_or(Value::Null, report::real));
    if verify && sol.exists {
        let (value, set) = oracle::spline_kkt(&p.t, &p.v, &p.b, tol);
        let delta = (value - sol.min_value.unwrap_or(f64::INFINITY))
            .abs()
            .max(set.distance_to(&sol.spline_set, tol));
        out.oracle_delta = Some(delta);
    }
    Ok(())
}

fn smooth(
    file: &ProblemFile,
    tol: &Tolerance,
    verify: bool,
    out: &mut Outcome,
) -> Result<(), ProblemError> {
    let sec = section(&file.smooth, Command::Smooth)?;
    let rho = sec
        .rho
        .or(file.params.rho)
        .ok_or_else(|| ProblemError::MissingSection("smooth.rho or params.rho".into()))?;
    positive("rho", rho)?;
    let base = spline_problem(file, Command::Smooth.name(), sec)?;
    let p = spline::SmoothingProblem::new(base, rho)?;
    let sol = spline::smooth_solve(&p, tol)?;
    out.put("rho", report::real(rho));
    out.put("argmin_set", report::coset(&sol.argmin_set));
    out.put("min_value", report::real(sol.min_value));
    if verify {
        let (value, x) = oracle::smoothing_normal(&p.base.t, &p.base.v, &p.base.b, rho, tol);
        let off = match (sol.argmin_set.point(), sol.argmin_set.direction()) {
            (Some(point), Some(dir)) => {
                let diff = &x - point;
                (&diff - dir.projector() * &diff).norm()
            }
            _ => f64::INFINITY,
        };
        out.oracle_delta = Some((value - sol.min_value).abs().max(off));
    }
    Ok(())
}

fn weighted_inputs(
    file: &ProblemFile,
    section_name: &str,
    sec: &super::problem::WeightedSection,
    tol: &Tolerance,
) -> Result<(weighted::Weight, crate::Subspace), ProblemError> {
    let (wname, w) = file.weight(&format!("{}.weight", section_name), &sec.weight, tol)?;
    let (sname, s) = file.subspace(&format!("{}.subspace", section_name), &sec.subspace, tol)?;
    same_dim((&wname, w.dim()), (&sname, s.ambient()))?;
    Ok((w, s))
}

fn shorted(
    file: &ProblemFile,
    tol: &Tolerance,
    verify: bool,
    out: &mut Outcome,
) -> Result<(), ProblemError> {
    let sec = section(&file.shorted, Command::Shorted)?;
    let (w, s) = weighted_inputs(file, Command::Shorted.name(), sec, tol)?;
    let sigma = weighted::shorted(&w, &s, tol)?;
    out.put("shorted", report::matrix(&sigma));
    out.put(
        "range",
        report::subspace(&crate::Subspace::from_columns(&sigma, tol)),
    );
    if verify {
        let route = weighted::shorted_via_projection(&w, &s, tol)?;
        out.oracle_delta = Some(linalg::max_abs(&(&sigma - route)));
    }
    Ok(())
}

fn complementable(
    file: &ProblemFile,
    tol: &Tolerance,
    verify: bool,
    out: &mut Outcome,
) -> Result<(), ProblemError> {
    let sec = section(&file.complementable, Command::Complementable)?;
    let (w, s) = weighted_inputs(file, Command::Complementable.name(), sec, tol)?;
    let rep = weighted::complementability(&w, &s, tol)?;
    out.put("is_complementable", json!(rep.is_complementable));
    out.put("criterion_ab", json!(rep.criterion_ab));
    out.put(
        "companion",
        report::subspace(&weighted::w_companion(&s, &w, tol)?),
    );
    out.put("domain", report::subspace(&rep.domain));
    out.put("mul", report::subspace(&rep.mul));
    out.put(
        "blocks",
        rep.pws_blocks
            .as_ref()
            .map_or(Value::Null, |b| blocks_json(b, tol)),
    );
    if verify {
        let dim = oracle::companion_sum_dim(s.basis(), w.matrix(), tol);
        out.oracle_delta = Some(dim.abs_diff(rep.domain.dim()) as f64);
    }
    Ok(())
}

fn krein(
    file: &ProblemFile,
    tol: &Tolerance,
    verify: bool,
    out: &mut Outcome,
) -> Result<(), ProblemError> {
    let sec = section(&file.krein_classify, Command::KreinClassify)?;
    let (w, s) = weighted_inputs(file, Command::KreinClassify.name(), sec, tol)?;
    let rep = weighted::krein_classify(&s, &w, tol)?;
    out.put("isotropic", report::subspace(&rep.isotropic));
    out.put("degenerate", json!(!rep.nondegenerate));
    out.put("nondegenerate", json!(rep.nondegenerate));
    out.put("pseudo_regular", json!(rep.pseudo_regular));
    out.put("regular", json!(rep.regular));
    if verify {
        let dim = oracle::isotropic_dim(s.basis(), w.matrix(), tol);
        out.oracle_delta = Some(dim.abs_diff(rep.isotropic.dim()) as f64);
    }
    Ok(())
}
