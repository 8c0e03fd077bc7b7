-- Adding a function to a number.
add 1 (fun (x : Nat) => x)
