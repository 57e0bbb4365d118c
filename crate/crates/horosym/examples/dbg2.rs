fn main() {
    use horosym::gluing::*;
    use horosym::spacespec::space_from_spec;
    let a = GluedAnsatz::build(&space_from_spec("AI").unwrap()).unwrap();
    let (x1c, x2c) = (1.5, 26.0);
    let (jet, reg) = a.glued_jet(x1c, x2c);
    println!("region {reg:?}");
    let adet = jet.fxx*jet.fyy - jet.fxy*jet.fxy;
    for h in [1.0/16.0, 1.0/64.0, 1.0/256.0] {
        let fd = fd_hessian_det(&|u, v| a.glued_jet(u, v).0.f, x1c, x2c, h);
        println!("h={h:.5}: fd={fd:.8e} analytic={adet:.8e} rel={:.2e}", (adet/fd-1.0).abs());
    }
    // entrywise FD
    let h = 1.0/64.0;
    let f = |u: f64, v: f64| a.glued_jet(u, v).0.f;
    let fxx = (f(x1c+h,x2c)-2.0*f(x1c,x2c)+f(x1c-h,x2c))/(h*h);
    println!("fxx fd={fxx:.6e} analytic={:.6e}", jet.fxx);
    let fyy = (f(x1c,x2c+h)-2.0*f(x1c,x2c)+f(x1c,x2c-h))/(h*h);
    println!("fyy fd={fyy:.6e} analytic={:.6e}", jet.fyy);
    let fxy = (f(x1c+h,x2c+h)-f(x1c+h,x2c-h)-f(x1c-h,x2c+h)+f(x1c-h,x2c-h))/(4.0*h*h);
    println!("fxy fd={fxy:.6e} analytic={:.6e}", jet.fxy);
}
