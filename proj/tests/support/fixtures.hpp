#pragma once

#include <set>
#include <string>

#include "miniaj/pipeline.hpp"

namespace miniaj::testing {

// The running example: a primality check advised before and after. Statement
// numbers span 1..16; the slice of the final print covers everything except
// the two result prints in main.
inline const char* primeSource() {
    return R"(class prime {
    static int n;
    static void main(String[] args) {
        n = parseInt(args[0]);
        if (isprime(n))
            print("Is Prime");
        else
            print("Is not Prime");
    }
    static boolean isprime(int n) {
        for (int i = 2; i <= n / 2; i = i + 1) {
            if (n % i == 0)
                return false;
        }
        return true;
    }
}
aspect PrimeAspect {
    pointcut primeoperation(int n): call(boolean prime.isprime(int)) && args(n);
    before(int n): primeoperation(n) {
        print("Testing the prime no for :" + n);
    }
    after(int n) returning(boolean result): primeoperation(n) {
        print("Showing the prime status for :" + n);
    }
}
)";
}

inline const std::set<int> primeGolden{1, 2, 3, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16};

inline const char* tallySource() {
    return R"(class tally {
    static int a;
    static int b;
    static void main(String[] args) {
        a = parseInt(args[0]);
        b = 0;
        while (a > 0) {
            step();
            a = a - 1;
        }
        print(b);
    }
    static void step() {
        b = b + a;
    }
}
aspect observe {
    pointcut onstep(): call(void tally.step()) && args();
    before(): onstep() {
        print("step");
    }
}
)";
}

inline const char* accountSource() {
    return R"(class account {
    static int balance;
    static int fee;
    static void main(String[] args) {
        account a = new account();
        balance = parseInt(args[0]);
        fee = 2;
        int total = 0;
        total = charge(balance);
        print(total);
    }
    static int charge(int amount) {
        if (amount < fee)
            return 0;
        return amount - fee;
    }
}
aspect audit {
    pointcut oncharge(int amount): call(int account.charge(int)) && args(amount);
    before(int amount): oncharge(amount) {
        print("charging:" + amount);
    }
    after(int amount) returning(int left): oncharge(amount) {
        print("left:" + left);
    }
}
)";
}

// Recursive countdown through a single advised site; the argument flows from
// one formal, so marking stays instance-independent.
inline const char* countdownSource() {
    return R"(class cd {
    static int total;
    static void main(String[] args) {
        total = 0;
        int r = 0;
        r = sum(parseInt(args[0]));
        print(r);
    }
    static int sum(int n) {
        if (n <= 0)
            return 0;
        total = total + n;
        int rest = 0;
        rest = sum(n - 1);
        return rest + n;
    }
}
aspect watch {
    pointcut onsum(int n): call(int cd.sum(int)) && args(n);
    before(int n): onsum(n) {
        print("down:" + n);
    }
}
)";
}

inline Program makeProgram(const std::string& src) { return buildProgram(src); }

inline RunResult runWith(const Program& prog, std::vector<long long> args,
                         long long budget = 1'000'000) {
    RunInput in;
    in.args = std::move(args);
    in.stepBudget = budget;
    return runProgram(prog, in);
}

}  // namespace miniaj::testing
