//! Dispatch of the subcommands. Every command returns both renderings; the
//! caller picks one.

use crate::input::{self, read};
use crate::{Cli, CliError, CodesCommand, Command, DimStrategy, FanCommand, ParamsSource, RbmCommand, Strategy, TropvarCommand};
use serde::Deserialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use troprbm::codes::{self, BinaryCode};
use troprbm::cube::enumerate::{ARRANGEMENT_LIMIT, BRUTE_FORCE_LIMIT};
use troprbm::cube::{self, vertex_string, EnumerationStrategy, Slicing};
use troprbm::exact::{to_pq, Rational, RationalMatrix};
use troprbm::fan::{self, SimplicialComplexData, Triangulation};
use troprbm::poly::{self, SparsePolynomial};
use troprbm::stats::{self, Distribution, SAMPLE_BOUND};
use troprbm::tropical::{self, DimensionStrategy, TropParams, TropicalPoint};

pub struct Output {
    pub text: String,
    pub json: Value,
}

fn invalid<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Invalid(e.to_string())
}

fn pqs(values: &[Rational]) -> Vec<String> {
    values.iter().map(to_pq).collect()
}

fn matrix_rows(m: &RationalMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| pqs(r)).collect()
}

fn lines<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().map(|l| l + "\n").collect()
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Slicings { n, count, strategy } => slicings(*n, *count, *strategy, cli.allow_long),
        Command::ZonotopeFacets { n } => {
            let f = cube::count_zonotope_facets(*n).map_err(invalid)?;
            Ok(Output { text: format!("{f}\n"), json: json!({ "n": n, "facets": f }) })
        }
        Command::Phi(src) => phi(src),
        Command::Infer(src) => infer(src),
        Command::Dim { n, k, strategy, seed, restarts, steps } => {
            let strategy = match strategy {
                DimStrategy::Exhaustive => DimensionStrategy::Exhaustive { allow_long: cli.allow_long },
                DimStrategy::Greedy => DimensionStrategy::GreedyRandom { seed: *seed, restarts: *restarts, steps: *steps },
                DimStrategy::Code => DimensionStrategy::CodeBased,
            };
            let r = tropical::tropical_dimension(*n, *k, strategy).map_err(invalid)?;
            let text = format!(
                "n: {}\nk: {}\nstrategy: {}\nmax_rank: {}\ndim: {}\nexpected: {}\ncertified: {}\nwitness: {}\n",
                r.n,
                r.k,
                r.strategy,
                r.max_rank,
                r.dim,
                tropical::dimension::expected_dimension(r.n, r.k),
                r.certified,
                r.witness.join(" ")
            );
            Ok(Output { text, json: serde_json::to_value(&r).expect("serializable") })
        }
        Command::MemberTm1 { point } => member_tm1(point),
        Command::Codes(c) => codes_cmd(c),
        Command::Rbm(c) => rbm(c),
        Command::Tropvar(c) => tropvar(c),
        Command::Fan(c) => fan_cmd(c),
    }
}

fn slicings(n: usize, count: bool, strategy: Strategy, allow_long: bool) -> Result<Output, CliError> {
    if n > BRUTE_FORCE_LIMIT && n <= ARRANGEMENT_LIMIT && !allow_long {
        return Err(CliError::Invalid(format!(
            "the n = {n} census takes minutes; pass --allow-long"
        )));
    }
    let strategy = match strategy {
        Strategy::Arrangement => EnumerationStrategy::Arrangement,
        Strategy::BruteForce => EnumerationStrategy::BruteForce,
    };
    if count {
        let c = cube::count_slicings(n, strategy).map_err(invalid)?;
        return Ok(Output { text: format!("{c}\n"), json: json!({ "n": n, "count": c }) });
    }
    let all = cube::enumerate_slicings(n, strategy).map_err(invalid)?;
    Ok(Output {
        text: lines(all.iter().map(Slicing::to_line)),
        json: json!({ "n": n, "count": all.len(), "slicings": all.iter().map(slicing_json).collect::<Vec<_>>() }),
    })
}

fn slicing_json(s: &Slicing) -> Value {
    json!({
        "positive": s.positive().to_hex(),
        "omega": pqs(s.omega()),
        "offset": to_pq(s.offset()),
    })
}

fn trop_params(src: &ParamsSource) -> Result<TropParams, CliError> {
    match (&src.params, src.random) {
        (Some(path), false) => input::trop_params(path),
        (None, true) => {
            let (n, k) = (src.n.expect("clap requires n"), src.k.expect("clap requires k"));
            TropParams::random(n, k, src.seed, SAMPLE_BOUND).map_err(invalid)
        }
        _ => Err(CliError::Invalid("give --params FILE or --random --n N --k K".into())),
    }
}

fn params_json(p: &TropParams) -> Value {
    json!({
        "W": p.weights().iter().map(|r| pqs(r)).collect::<Vec<_>>(),
        "b": pqs(p.visible_bias()),
        "c": pqs(p.hidden_bias()),
    })
}

fn phi(src: &ParamsSource) -> Result<Output, CliError> {
    let p = trop_params(src)?;
    if p.n() > tropical::DIMENSION_LIMIT || p.k() > tropical::DIMENSION_LIMIT {
        return Err(CliError::Invalid("phi enumerates 2^(n+k) states; n, k <= 12".into()));
    }
    let q = tropical::phi(&p);
    Ok(Output {
        text: q.to_text(),
        json: json!({ "n": p.n(), "k": p.k(), "params": params_json(&p), "point": pqs(q.coords()) }),
    })
}

fn infer(src: &ParamsSource) -> Result<Output, CliError> {
    let p = trop_params(src)?;
    if p.n() > tropical::DIMENSION_LIMIT || p.k() > tropical::DIMENSION_LIMIT {
        return Err(CliError::Invalid("infer enumerates 2^(n+k) states; n, k <= 12".into()));
    }
    let map = tropical::inference_function(&p).map_err(invalid)?;
    let coords = tropical::inference_coordinates(p.n(), p.k(), &map);
    let text = lines(
        map.iter()
            .enumerate()
            .map(|(v, &h)| format!("{} {}", vertex_string(p.n(), v as u32), vertex_string(p.k(), h))),
    );
    Ok(Output {
        text,
        json: json!({
            "n": p.n(),
            "k": p.k(),
            "params": params_json(&p),
            "map": map.iter().enumerate().map(|(v, &h)| json!({
                "visible": vertex_string(p.n(), v as u32),
                "hidden": vertex_string(p.k(), h),
            })).collect::<Vec<_>>(),
            "coordinates": coords.iter().map(|c| c.to_hex()).collect::<Vec<_>>(),
        }),
    })
}

fn member_tm1(point: &std::path::Path) -> Result<Output, CliError> {
    let q = TropicalPoint::parse(&read(point)?).map_err(invalid)?;
    let m = tropical::membership_tm1(&q).map_err(invalid)?;
    let mut text = format!("member: {}\n", m.member);
    let mut j = json!({ "n": q.n(), "member": m.member, "slicing": null, "params": null });
    if let (Some(s), Some(p)) = (&m.slicing, &m.params) {
        let _ = writeln!(text, "slicing: {}", s.to_line());
        let _ = writeln!(
            text,
            "b: {}\nomega: {}\nc: {}\nmu: {}",
            pqs(&p.b).join(" "),
            pqs(&p.omega).join(" "),
            to_pq(&p.c),
            to_pq(&p.mu)
        );
        j["slicing"] = slicing_json(s);
        j["params"] = json!({ "b": pqs(&p.b), "omega": pqs(&p.omega), "c": to_pq(&p.c), "mu": to_pq(&p.mu) });
    }
    Ok(Output { text, json: j })
}

fn read_code(path: &std::path::Path) -> Result<BinaryCode, CliError> {
    BinaryCode::parse(&read(path)?).map_err(invalid)
}

fn codes_cmd(c: &CodesCommand) -> Result<Output, CliError> {
    match c {
        CodesCommand::Hamming { l } => {
            let code = codes::hamming_code(*l).map_err(invalid)?;
            Ok(Output { text: code.to_text(), json: code_json(&code) })
        }
        CodesCommand::Bounds { n } => {
            let lower = codes::varshamov_lower(*n).map_err(invalid)?;
            let upper = codes::covering_upper(*n).map_err(invalid)?;
            let known = u32::try_from(*n).ok().and_then(codes::table_known_bounds);
            let mut text = format!("n: {n}\nvarshamov_lower: {lower}\ncovering_upper: {upper}\n");
            let known_json = match &known {
                Some(kb) => {
                    let ge = kb.k_ge.as_ref().map(|v| v.to_string());
                    let _ = writeln!(text, "known_k_le: {}", kb.k_le);
                    let _ = writeln!(text, "known_k_ge: {}", ge.as_deref().unwrap_or("-"));
                    json!({
                        "k_le": kb.k_le.to_string(),
                        "k_ge": ge,
                        "k_le_improved": kb.k_le_improved,
                        "k_ge_improved": kb.k_ge_improved,
                    })
                }
                None => Value::Null,
            };
            Ok(Output {
                text,
                json: json!({
                    "n": n,
                    "varshamov_lower": lower.to_string(),
                    "covering_upper": upper.to_string(),
                    "known": known_json,
                }),
            })
        }
        CodesCommand::Exact => {
            let t = codes::exact_small_values();
            let mut text = String::new();
            for v in &t.a2 {
                let _ = writeln!(text, "A2({},3) = {}", v.n, v.value);
            }
            for v in &t.k2 {
                let _ = writeln!(text, "K2({},1) = {}", v.n, v.value);
            }
            Ok(Output { text, json: serde_json::to_value(&t).expect("serializable") })
        }
        CodesCommand::Analyze { code } => {
            let code = read_code(code)?;
            let d = code.min_distance().map_err(invalid)?;
            let r = code.covering_radius();
            Ok(Output {
                text: format!("n: {}\nsize: {}\nmin_distance: {d}\ncovering_radius: {r}\n", code.n(), code.len()),
                json: json!({ "n": code.n(), "size": code.len(), "min_distance": d, "covering_radius": r }),
            })
        }
        CodesCommand::Slicings { code } => {
            let code = read_code(code)?;
            let s = codes::code_to_slicings(&code).map_err(invalid)?;
            Ok(Output {
                text: lines(s.iter().map(Slicing::to_line)),
                json: json!({ "n": code.n(), "slicings": s.iter().map(slicing_json).collect::<Vec<_>>() }),
            })
        }
    }
}

fn code_json(code: &BinaryCode) -> Value {
    json!({
        "n": code.n(),
        "words": code.words().iter().map(|&w| vertex_string(code.n(), w)).collect::<Vec<_>>(),
    })
}

fn read_distribution(path: &std::path::Path) -> Result<Distribution, CliError> {
    Distribution::parse(&read(path)?).map_err(invalid)
}

fn distribution_output(p: &Distribution, extra: Value) -> Output {
    let mut j = json!({ "n": p.n(), "p": pqs(p.probabilities()) });
    if let (Value::Object(m), Value::Object(e)) = (&mut j, extra) {
        m.extend(e);
    }
    Output { text: p.to_text(), json: j }
}

fn rbm(c: &RbmCommand) -> Result<Output, CliError> {
    match c {
        RbmCommand::Joint(src) => {
            let params = match (&src.params, src.random) {
                (Some(path), false) => input::exp_params(path)?,
                (None, true) => {
                    let (n, k) = (src.n.expect("clap requires n"), src.k.expect("clap requires k"));
                    check_small(n, k)?;
                    stats::sample_exp_params(n, k, src.seed, SAMPLE_BOUND)
                }
                _ => return Err(CliError::Invalid("give --params FILE or --random --n N --k K".into())),
            };
            check_small(params.n(), params.k())?;
            let p = stats::joint_distribution(&params);
            Ok(distribution_output(&p, json!({ "k": params.k() })))
        }
        RbmCommand::Mixture(src) => {
            let params = match (&src.params, src.random) {
                (Some(path), false) => input::mixture_params(path)?,
                (None, true) => {
                    let n = src.n.expect("clap requires n");
                    check_small(n, 1)?;
                    stats::sample_mixture_params(n, src.seed, SAMPLE_BOUND)
                }
                _ => return Err(CliError::Invalid("give --params FILE or --random --n N".into())),
            };
            check_small(params.n(), 1)?;
            Ok(distribution_output(&stats::mixture_distribution(&params), json!({})))
        }
        RbmCommand::Hadamard { p, q } => {
            let r = stats::hadamard_product(&read_distribution(p)?, &read_distribution(q)?).map_err(invalid)?;
            Ok(distribution_output(&r, json!({})))
        }
        RbmCommand::FlattenRank { p, split } => {
            let p = read_distribution(p)?;
            match split {
                Some(s) => {
                    let a = input::split(s)?;
                    let rank = stats::flattening(&p, &a).map_err(invalid)?.rank();
                    Ok(Output { text: format!("{rank}\n"), json: json!({ "n": p.n(), "split": a, "rank": rank }) })
                }
                None => {
                    let rank = stats::max_flattening_rank(&p).map_err(invalid)?;
                    Ok(Output { text: format!("{rank}\n"), json: json!({ "n": p.n(), "max_rank": rank }) })
                }
            }
        }
        RbmCommand::Covariance { p } => {
            let p = read_distribution(p)?;
            let m = stats::covariance_matrix(&p);
            let rows = matrix_rows(&m);
            Ok(Output {
                text: lines(rows.iter().map(|r| r.join(" "))),
                json: json!({ "n": p.n(), "covariance": rows }),
            })
        }
        RbmCommand::Check { p } => {
            let p = read_distribution(p)?;
            let r = stats::check_membership_necessary(&p).map_err(invalid)?;
            let mut text = format!(
                "verdict: {}\nnecessary_only: true\nmax_flattening_rank: {}\nflattening_rank_ok: {}\ntriple_sign_ok: {}\ncovariance_binomial_ok: {}\n",
                r.verdict, r.max_flattening_rank, r.flattening_rank_ok, r.triple_sign_ok, r.covariance_binomial_ok
            );
            for f in &r.failures {
                let _ = writeln!(text, "failure: {f}");
            }
            Ok(Output { text, json: serde_json::to_value(&r).expect("serializable") })
        }
    }
}

fn check_small(n: usize, k: usize) -> Result<(), CliError> {
    if n == 0 || n > stats::FLATTENING_LIMIT || k > tropical::DIMENSION_LIMIT {
        return Err(CliError::Invalid(format!(
            "distributions are tabulated for 1 <= n <= {} and k <= {}",
            stats::FLATTENING_LIMIT,
            tropical::DIMENSION_LIMIT
        )));
    }
    Ok(())
}

fn tropvar(c: &TropvarCommand) -> Result<Output, CliError> {
    match c {
        TropvarCommand::Minors { n, split } => {
            if *n == 0 || *n > stats::FLATTENING_LIMIT {
                return Err(CliError::Invalid(format!("minors are listed for 1 <= n <= {}", stats::FLATTENING_LIMIT)));
            }
            let minors: Vec<(Vec<usize>, SparsePolynomial)> = match split {
                Some(s) => {
                    let a = input::split(s)?;
                    poly::flattening_minors(*n, &a)
                        .map_err(invalid)?
                        .into_iter()
                        .map(|f| (a.clone(), f))
                        .collect()
                }
                None => poly::all_flattening_minors(*n),
            };
            Ok(Output {
                text: lines(minors.iter().map(|(_, f)| f.to_string())),
                json: json!({
                    "n": n,
                    "count": minors.len(),
                    "minors": minors.iter().map(|(a, f)| json!({ "split": a, "polynomial": f.to_string() })).collect::<Vec<_>>(),
                }),
            })
        }
        TropvarCommand::InitialForm { poly: path, weights } => {
            let f = SparsePolynomial::parse(&read(path)?).map_err(invalid)?;
            let w = TropicalPoint::parse(&read(weights)?).map_err(invalid)?;
            let (g, weight) = poly::initial_form_with_weight(&f, &w).map_err(invalid)?;
            Ok(Output {
                text: format!("initial_form: {g}\nterms: {}\nmonomial: {}\nweight: {}\n", g.len(), g.len() == 1, to_pq(&weight)),
                json: json!({
                    "initial_form": g.to_string(),
                    "terms": g.len(),
                    "monomial": g.len() == 1,
                    "weight": to_pq(&weight),
                }),
            })
        }
        TropvarCommand::Witness2222 { weights } => {
            let w = match weights {
                Some(path) => Some(TropicalPoint::parse(&read(path)?).map_err(invalid)?),
                None => None,
            };
            let r = poly::quartic_witness_check(w.as_ref()).map_err(invalid)?;
            let text = format!(
                "prevariety: {}\nminors_checked: {}\nquartic_terms: {}\nquartic_initial_terms: {}\nquartic_monomial: {}\ninitial_form: {}\ninitial_weight: {}\nseparates: {}\n",
                r.prevariety,
                r.minors_checked,
                r.quartic_terms,
                r.quartic_initial_terms,
                r.quartic_monomial,
                r.initial_form,
                r.initial_weight,
                r.separates
            );
            Ok(Output { text, json: serde_json::to_value(&r).expect("serializable") })
        }
    }
}

#[derive(Deserialize)]
struct ComplexFile {
    vertices: Vec<Value>,
    faces_by_dim: Vec<Vec<Vec<usize>>>,
}

fn fvector_text(f: &[usize]) -> String {
    f.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ") + "\n"
}

fn fan_cmd(c: &FanCommand) -> Result<Output, CliError> {
    match c {
        FanCommand::Triangulations { count } => {
            let ts = fan::enumerate_triangulations();
            let regular = ts.iter().filter(|t| t.regular_lift().is_some()).count();
            if *count {
                return Ok(Output {
                    text: format!("{}\n", ts.len()),
                    json: json!({ "count": ts.len(), "regular": regular }),
                });
            }
            Ok(Output {
                text: ts.iter().map(Triangulation::to_text).collect::<Vec<_>>().join("\n"),
                json: json!({
                    "count": ts.len(),
                    "regular": regular,
                    "triangulations": ts.iter().map(|t| t.cells().iter().map(|cell| {
                        cell.iter().map(|&v| vertex_string(3, v as u32)).collect::<Vec<_>>()
                    }).collect::<Vec<_>>()).collect::<Vec<_>>(),
                }),
            })
        }
        FanCommand::SphereFvector => {
            let f = fan::secondary_sphere_fvector();
            Ok(Output { text: fvector_text(&f), json: json!({ "fvector": f }) })
        }
        FanCommand::Tm13 { fvector } => {
            let t = fan::tm13_subcomplex().map_err(|e| CliError::Internal(e.to_string()))?;
            let f = t.complex.fvector();
            if *fvector {
                return Ok(Output { text: fvector_text(&f), json: json!({ "fvector": f }) });
            }
            let (vv, vd, dd) = t.edge_census;
            let count = |class: &str| t.complex.vertices.iter().filter(|v| v.class == class).count();
            let mut text = format!(
                "fvector: {}vertices: {} D, {} V\nedges: {vv} VV, {vd} VD, {dd} DD\ntriangulations: {}\n",
                fvector_text(&f),
                count("D"),
                count("V"),
                t.triangulations.len()
            );
            for (d, faces) in t.complex.faces_by_dim.iter().enumerate() {
                for face in faces {
                    let labels: Vec<&str> = face.iter().map(|&i| t.complex.vertices[i].label.as_str()).collect();
                    let _ = writeln!(text, "face{d}: {}", labels.join(" "));
                }
            }
            let mut j = serde_json::to_value(&t.complex).expect("serializable");
            j["fvector"] = json!(f);
            j["edge_census"] = json!({ "VV": vv, "VD": vd, "DD": dd });
            j["rays"] = json!(t.rays.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
            Ok(Output { text, json: j })
        }
        FanCommand::Homology { complex } => {
            let data = match complex {
                Some(path) => {
                    let f: ComplexFile = serde_json::from_str(&read(path)?)
                        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
                    SimplicialComplexData::new(f.vertices.len(), f.faces_by_dim).map_err(invalid)?
                }
                None => fan::tm13_subcomplex().map_err(|e| CliError::Internal(e.to_string()))?.complex,
            };
            let h = fan::reduced_homology_ranks(&data).map_err(invalid)?;
            Ok(Output { text: fvector_text(&h), json: json!({ "reduced_homology_ranks": h }) })
        }
    }
}
