use std::io::{BufWriter, Write};
use std::ops::ControlFlow;
use std::path::Path;

use anyhow::{Context, Result};

use loopsmith::group::Subgroup;
use loopsmith::loops::{
    centre_of_loop, factor_loop, first_associator_witness, first_moufang_violation, first_non_diassociative_pair,
    is_associative, is_moufang, is_normal_subloop, loop_invariant, make_loop, mlt_left, FiniteLoop, LoopError,
    Subloop,
};
use loopsmith::octonion::{build_octavian_units, float_checks, octavian_factor_by_centre};
use loopsmith::product::{
    build_group_and_section, build_product_loop, decomposition_report, properness_report, torus_variant_builder,
    validate_spec, ProductError, ProductSpec, ValidatedSpec,
};
use loopsmith::report::{yes_no, Report};
use loopsmith::sections::{classify_section_loops, count_sections, enumerate_sections, for_each_section, SearchOptions};
use loopsmith::tbl::{write_block_sidecar, write_int_rows, write_table};

use crate::input::{base_dir, closure_cap, parse_group, read_json, read_table, ProductFile, SectionFile};
use crate::{Domain, EXIT_DOMAIN, EXIT_OK};

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn triple((x, y, z): (usize, usize, usize), label: impl Fn(usize) -> usize) -> String {
    format!("({},{},{})", label(x), label(y), label(z))
}

/// Identity of a table that has already passed `make_loop`.
fn identity_of(rows: &[Vec<usize>]) -> usize {
    let n = rows.len();
    (0..n)
        .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
        .unwrap_or(0)
}

pub fn validate(path: &Path) -> Result<i32> {
    let rows = read_table(path)?;
    let mut r = Report::new(format!("validate {}", path.display()));
    r.kv("order", rows.len());
    let l = match make_loop(&rows) {
        Ok(l) => l,
        Err(e) => {
            r.line(format!("loop: no; {e}")).kv("loop", "no");
            print!("{r}");
            return Ok(EXIT_DOMAIN);
        }
    };
    // make_loop swaps the identity into label 0; report witnesses in the
    // file's own labels
    let e = identity_of(&rows);
    let label = |x: usize| if x == 0 { e } else if x == e { 0 } else { x };
    let assoc = first_associator_witness(&l);
    let moufang = first_moufang_violation(&l);
    let mut first = format!("loop: yes; associative: {}", yes_no(assoc.is_none()));
    if let Some(w) = assoc {
        first.push_str(&format!("; witness={}", triple(w, label)));
    }
    let mut second = format!("group: {}; moufang: {}", yes_no(assoc.is_none()), yes_no(moufang.is_none()));
    if let Some(w) = moufang {
        second.push_str(&format!("; moufang witness={}", triple(w, label)));
    }
    r.line(first)
        .line(second)
        .line(format!("commutative: {}", yes_no(l.is_commutative())))
        .line(format!("identity: {e}"));
    r.kv("loop", "yes")
        .kv("group", yes_no(assoc.is_none()))
        .kv("associative", yes_no(assoc.is_none()))
        .kv("moufang", yes_no(moufang.is_none()))
        .kv("commutative", yes_no(l.is_commutative()))
        .kv("identity", e);
    if let Some(w) = assoc {
        r.kv("witness", triple(w, label));
    }
    if let Some(w) = moufang {
        r.kv("moufang_witness", triple(w, label));
    }
    print!("{r}");
    Ok(EXIT_OK)
}

fn parse_members(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("bad element {t:?} in subloop list")))
        .collect()
}

pub fn check(path: &Path, subloop: Option<&str>, out: Option<&Path>) -> Result<i32> {
    let rows = read_table(path)?;
    let l = make_loop(&rows).map_err(|e| Domain(format!("not a loop: {e}")))?;
    let cap = closure_cap()?;
    let mut r = Report::new(format!("check {}", path.display()));
    let associative = is_associative(&l);
    let moufang = is_moufang(&l);
    let diassociative = first_non_diassociative_pair(&l);
    let centre = centre_of_loop(&l);
    r.line(format!("order: {}", l.order()))
        .line(format!("commutative: {}", yes_no(l.is_commutative())))
        .line(format!("associative: {}", yes_no(associative)))
        .line(format!("moufang: {}", yes_no(moufang)))
        .line(format!("diassociative: {}", yes_no(diassociative.is_none())))
        .line(format!("centre: {:?}", centre.members()));
    if let Some((x, y)) = diassociative {
        r.line(format!("non-associative 2-generated subloop: <{x},{y}>"));
    }
    let mlt = match mlt_left(&l, cap) {
        Ok(c) => {
            let stab = c.stabilizer(0).len();
            r.line(format!("left multiplication group: order {}, identity stabilizer {stab}", c.order()));
            (c.order().to_string(), stab.to_string())
        }
        Err(LoopError::Perm(e)) => {
            r.line(format!("left multiplication group: {e}"));
            ("over-cap".to_string(), "over-cap".to_string())
        }
        Err(e) => return Err(e.into()),
    };
    r.kv("order", l.order())
        .kv("commutative", yes_no(l.is_commutative()))
        .kv("associative", yes_no(associative))
        .kv("moufang", yes_no(moufang))
        .kv("diassociative", yes_no(diassociative.is_none()))
        .kv("centre", centre.order())
        .kv("mlt_left_order", mlt.0)
        .kv("stabilizer_order", mlt.1);

    let mut code = EXIT_OK;
    if let Some(text) = subloop {
        let members = parse_members(text)?;
        match Subloop::new(&l, &members) {
            Ok(n) => {
                let normal = is_normal_subloop(&l, &n);
                r.line(format!("subloop {:?}: yes, normal {}", n.members(), yes_no(normal)));
                r.kv("subloop", "yes").kv("normal", yes_no(normal));
                if normal {
                    let f = factor_loop(&l, &n)?;
                    r.line(format!("factor loop: order {}", f.quotient.order()));
                    r.kv("factor_order", f.quotient.order());
                    if let Some(dir) = out {
                        std::fs::create_dir_all(dir)?;
                        write_file(dir, "factor.tbl", &write_table(&f.quotient.rows()))?;
                        write_file(dir, "factor.blocks", &write_block_sidecar(&f.blocks))?;
                    }
                }
            }
            Err(e) => {
                r.line(format!("subloop {members:?}: no ({e})"));
                r.kv("subloop", "no");
                code = EXIT_DOMAIN;
            }
        }
    }
    print!("{r}");
    Ok(code)
}

fn load_spec(path: &Path) -> Result<Result<ValidatedSpec, ProductError>> {
    let pf: ProductFile = read_json(path)?;
    let base = base_dir(path);
    let p = parse_group(&pf.p, &base)?;
    if let Some(t) = &pf.torus {
        anyhow::ensure!(
            pf.k.is_none() && pf.s.is_none(),
            "a torus spec determines K and S; remove the \"K\" and \"S\" fields"
        );
        return Ok(torus_variant_builder(t.m, t.s, p, pf.phi, pf.g));
    }
    let k = parse_group(pf.k.as_deref().context("missing field \"K\"")?, &base)?;
    let s = parse_group(pf.s.as_deref().context("missing field \"S\"")?, &base)?;
    let spec = ProductSpec::new(k, p, s, pf.phi, pf.g).context("phi or g does not fit the groups")?;
    Ok(validate_spec(spec))
}

pub fn build_product(path: &Path, out: Option<&Path>) -> Result<i32> {
    let v = match load_spec(path)? {
        Ok(v) => v,
        // malformed images are input errors, not failed clauses
        Err(ProductError::Group(e)) => return Err(anyhow::Error::new(e).context("invalid spec")),
        Err(e) => {
            let mut r = Report::new("validation");
            r.line(format!("{}: {e}", e.clause())).kv("valid", "no").kv("clause", e.clause());
            print!("{r}");
            eprintln!("error: {}: {e}", e.clause());
            return Ok(EXIT_DOMAIN);
        }
    };
    let cap = closure_cap()?;
    let pl = build_product_loop(&v);
    let gs = build_group_and_section(&v)?;
    let proper = properness_report(&v)?.to_report();
    let decomposition = decomposition_report(&v, cap)?.to_report();
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        write_file(dir, "loop.tbl", &write_table(&pl.base.rows()))?;
        write_file(dir, "group.tbl", &write_table(&gs.group.rows()))?;
        let section: Vec<Vec<usize>> = gs.section.image().iter().map(|&z| vec![z]).collect();
        write_file(dir, "section.txt", &write_block_sidecar(&section))?;
        let pairs: Vec<Vec<usize>> = gs.pair_of_coset.iter().map(|&p| vec![p]).collect();
        write_file(dir, "coset_pairs.txt", &write_block_sidecar(&pairs))?;
        write_file(dir, "properness.txt", &proper.to_string())?;
        write_file(dir, "decomposition.txt", &decomposition.to_string())?;
    }
    print!("{proper}{decomposition}");
    Ok(EXIT_OK)
}

pub struct SearchFlags {
    pub count_only: bool,
    pub limit: Option<usize>,
    pub require_generation: bool,
    pub parallel: bool,
    pub unpinned: bool,
    pub symmetry_breaking: bool,
}

fn load_instance(path: &Path, flags: Option<&SearchFlags>) -> Result<(loopsmith::group::FiniteGroup, Subgroup, SearchOptions)> {
    let sf: SectionFile = read_json(path)?;
    let g = parse_group(&sf.group, &base_dir(path))?;
    let h = Subgroup::new(&g, &sf.subgroup).context("\"subgroup\" is not a subgroup of \"group\"")?;
    let o = sf.options;
    let mut opts = SearchOptions {
        max_solutions: o.max_solutions,
        symmetry_breaking: o.symmetry_breaking,
        parallel: o.parallel,
        require_generation: o.require_generation,
        pin_identity: o.pin_identity.unwrap_or(true),
    };
    if let Some(f) = flags {
        opts.max_solutions = f.limit.or(opts.max_solutions);
        opts.symmetry_breaking |= f.symmetry_breaking;
        opts.parallel |= f.parallel;
        opts.require_generation |= f.require_generation;
        opts.pin_identity &= !f.unpinned;
    }
    Ok((g, h, opts))
}

fn section_line(choice: &[usize]) -> String {
    choice.iter().map(|z| z.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn search_sections(path: &Path, flags: &SearchFlags) -> Result<i32> {
    let (g, h, opts) = load_instance(path, Some(flags))?;
    if flags.count_only {
        println!("count={}", count_sections(&g, &h, &opts));
        return Ok(EXIT_OK);
    }
    let stdout = std::io::stdout();
    let mut w = BufWriter::new(stdout.lock());
    if opts.parallel || opts.symmetry_breaking {
        for s in enumerate_sections(&g, &h, &opts) {
            writeln!(w, "{}", section_line(s.image()))?;
        }
    } else {
        let mut err = None;
        for_each_section(&g, &h, &opts, |s| match writeln!(w, "{}", section_line(s.image())) {
            Ok(()) => ControlFlow::Continue(()),
            Err(e) => {
                err = Some(e);
                ControlFlow::Break(())
            }
        });
        if let Some(e) = err {
            return Err(e.into());
        }
    }
    w.flush()?;
    Ok(EXIT_OK)
}

fn describe(l: &FiniteLoop) -> String {
    let orders: Vec<usize> = loop_invariant(l).iter().map(|inv| inv.2).collect();
    format!(
        "commutative {}, associative {}, moufang {}, element orders {orders:?}",
        yes_no(l.is_commutative()),
        yes_no(is_associative(l)),
        yes_no(is_moufang(l))
    )
}

pub fn classify(path: &Path, out: Option<&Path>) -> Result<i32> {
    let (g, h, opts) = load_instance(path, None)?;
    let classes = classify_section_loops(&g, &h, &opts).map_err(|e| Domain(e.to_string()))?;
    let mut r = Report::new(format!("classify {}", path.display()));
    let total: usize = classes.iter().map(|c| c.1).sum();
    for (i, (l, mult)) in classes.iter().enumerate() {
        r.line(format!("class {i}: {mult} sections; {}", describe(l)));
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        for (i, (l, _)) in classes.iter().enumerate() {
            write_file(dir, &format!("class_{i}.tbl"), &write_table(&l.rows()))?;
        }
    }
    r.kv("classes", classes.len()).kv("sections", total);
    let mults: Vec<String> = classes.iter().map(|c| c.1.to_string()).collect();
    r.kv("multiplicities", mults.join(","));
    print!("{r}");
    Ok(EXIT_OK)
}

pub fn octonion_demo(samples: usize, seed: u64, out: Option<&Path>) -> Result<i32> {
    let mut r = Report::new("octonion demo");
    let mut ok = true;
    r.kv("samples", samples).kv("seed", seed);
    if samples > 0 {
        let fc = float_checks(samples, seed);
        let pass = fc.max_moufang_residual <= 1e-12 && fc.max_norm_error <= 1e-12;
        ok &= pass;
        r.line(format!(
            "float: max Moufang residual {:e}, max norm error {:e}, max alternative residual {:e} ({})",
            fc.max_moufang_residual,
            fc.max_norm_error,
            fc.max_alternative_residual,
            if pass { "pass" } else { "fail" }
        ));
        r.kv("max_moufang_residual", format!("{:e}", fc.max_moufang_residual))
            .kv("max_norm_error", format!("{:e}", fc.max_norm_error))
            .kv("float", if pass { "pass" } else { "fail" });
    } else {
        r.line("float: skipped");
        r.kv("float", "skipped");
    }

    let o = build_octavian_units().map_err(|e| Domain(e.to_string()))?;
    let l = &o.table;
    let moufang = is_moufang(l);
    let witness = first_associator_witness(l);
    let centre = centre_of_loop(l).order();
    let diassociative = first_non_diassociative_pair(l).is_none();
    let factor = octavian_factor_by_centre(&o).map_err(|e| Domain(e.to_string()))?;
    let q = &factor.quotient;
    let factor_moufang = is_moufang(q);
    let factor_associative = is_associative(q);
    r.line(format!(
        "closure={} centre={centre} factor={} moufang={}",
        o.elements.len(),
        q.order(),
        if moufang { "exact" } else { "fail" }
    ));
    if let Some((x, y, z)) = witness {
        r.line(format!(
            "associator witness (doubled coordinates): {:?} {:?} {:?}",
            o.embed(x).0,
            o.embed(y).0,
            o.embed(z).0
        ));
    }
    let checks = [
        ("closure 240", o.elements.len() == 240),
        ("moufang", moufang),
        ("nonassociative", witness.is_some()),
        ("centre 2", centre == 2),
        ("diassociative", diassociative),
        ("factor 120", q.order() == 120),
        ("factor moufang", factor_moufang),
        ("factor nonassociative", !factor_associative),
    ];
    for (name, pass) in checks {
        r.line(format!("{name}: {}", if pass { "pass" } else { "fail" }));
        ok &= pass;
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        write_file(dir, "octavian.tbl", &write_table(&l.rows()))?;
        write_file(dir, "octavian.coords", &write_int_rows(&o.coordinate_rows()))?;
        write_file(dir, "factor.tbl", &write_table(&q.rows()))?;
        write_file(dir, "factor.blocks", &write_block_sidecar(&factor.blocks))?;
    }
    r.kv("closure", o.elements.len())
        .kv("centre", centre)
        .kv("factor", q.order())
        .kv("moufang", if moufang { "exact" } else { "fail" })
        .kv("diassociative", yes_no(diassociative))
        .kv("factor_moufang", yes_no(factor_moufang))
        .kv("factor_associative", yes_no(factor_associative))
        .kv("pass", yes_no(ok));
    print!("{r}");
    Ok(if ok { EXIT_OK } else { EXIT_DOMAIN })
}
