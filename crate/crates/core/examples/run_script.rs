//! Drive the script language from code, printing the text report.

use cosetkit::script::{run_script, Format, RunOptions};

const SCRIPT: &str = "\
group G = Z^2
subgroup A < G = span [[1,0]]
subgroup B < G = span [[0,1]]
coset C = B + (1,0)
set Y = A | C
normalize Y
member Y (1,7)
member Y (2,7)
set Z = C | A
equal Y Z
compare Y A radius 5
";

fn main() {
    let dir = std::env::temp_dir();
    let opts = RunOptions { format: Format::Text, window_radius: 20, out_dir: dir };
    let code = run_script(SCRIPT, &opts, &mut std::io::stdout(), &mut std::io::stderr());
    println!("exit code {code}");
}
