//! Shared fixtures for the benchmarks.

use groupcode::{parse_field, parse_group, AlgebraElement, GroupAlgebra};

pub const A4: &str = "perm:[(1,2,3),(1,2)(3,4)];order=[1,u,u^2*v,v,u^2*v*u,u^2,v*u,u*v,u*v*u,v*u*v,v*u^2,u*v*u^2]";
pub const S3: &str = "perm:[a=(1,2,3),b=(1,2)];order=[1,b,a,a^2,b*a^2,b*a]";

pub fn algebra(field: &str, group: &str) -> GroupAlgebra {
    GroupAlgebra::new(&parse_field(field).expect("field"), &parse_group(group).expect("group"))
}

pub fn a4_element() -> AlgebraElement {
    algebra("gf:2", A4).parse_element("1 + u + v + u^2*v*u").expect("element")
}

pub fn s3_element() -> AlgebraElement {
    let f = parse_field("gf:3^2:[2,2,1]").expect("field").with_symbol("w");
    GroupAlgebra::new(&f, &parse_group(S3).expect("group"))
        .parse_element("(2*w+2) + (w+1)*b + w*a + (2*w+1)*a^2 + (w+1)*b*a^2 + b*a")
        .expect("element")
}
