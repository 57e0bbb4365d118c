fn main() {
    use horosym::kstability::*;
    use horosym::spacespec::space_from_spec;
    use horosym::transverse::*;
    for tag in ["CIIa:r=5", "CIIb", "AIIIa:r=5", "EIII", "DIIIa"] {
        let s = space_from_spec(tag).unwrap();
        let k = solve_kstable_t(&s, &horosym::rational::rat(1, 1_000_000_000_000_000)).unwrap();
        let kf = k.to_f64();
        let t = k.t_star.representative();
        let p0 = restrict_dh_along_line(&s, &t);
        let factors = restricted_factors_f64(&s, &t);
        match solve_transverse(&p0, &factors, kf.lambda_minus, kf.lambda_plus, kf.m_plus, kf.m_minus, 40.0, 1e-10) {
            Ok(sol) => {
                let ep = expansion_coefficients(&sol, true, 3);
                let em = expansion_coefficients(&sol, false, 3);
                println!("{tag}: range [{:.1},{:.1}] res {:.1e} defect {:.1e} C+ {} C- {}",
                    sol.x[0], sol.x.last().unwrap(), sol.residual, sol.c_defect,
                    ep.map(|c| format!("ok C1={:.3e}", c[1])).unwrap_or_else(|e| format!("ERR {e}")),
                    em.map(|c| format!("ok C1={:.3e}", c[1])).unwrap_or_else(|e| format!("ERR {e}")));
            }
            Err(e) => println!("{tag}: solve ERR {e}"),
        }
    }
}
