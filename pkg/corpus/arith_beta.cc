(fun (n : Nat) => add 1 ((fun (x : Nat) => add 1 x) n)) 3
