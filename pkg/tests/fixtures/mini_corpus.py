"""Function-level units with drivers. Expected outputs come from running the
original, so only the drivers are listed here."""

PYTHON_UNITS = [
    (
        "py_sum_to",
        "def sum_to(n):\n    total = 0\n    for i in range(n):\n        total += i\n    return total",
        ["print(sum_to(0))", "print(sum_to(4))", "print(sum_to(10))"],
    ),
    (
        "py_count_positive",
        "def count_positive(xs):\n    count = 0\n    for x in xs:\n        if x > 0:\n            count += 1\n    return count",
        ["print(count_positive([]))", "print(count_positive([1, -2, 3]))", "print(count_positive([0, 0, 5]))"],
    ),
    (
        "py_max_of",
        "def max_of(xs):\n    best = xs[0]\n    for x in xs:\n        if x > best:\n            best = x\n    return best",
        ["print(max_of([3]))", "print(max_of([1, 9, 2]))", "print(max_of([-5, -2, -9]))"],
    ),
    (
        "py_factorial",
        "def factorial(n):\n    r = 1\n    for i in range(2, n + 1):\n        r *= i\n    return r",
        ["print(factorial(0))", "print(factorial(5))", "print(factorial(7))"],
    ),
    (
        "py_is_prime",
        (
            "def is_prime(n):\n    if n < 2:\n        return False\n    i = 2\n    while i * i <= n:\n"
            "        if n % i == 0:\n            return False\n        i += 1\n    return True"
        ),
        ["print(is_prime(1))", "print(is_prime(17))", "print(is_prime(21))"],
    ),
    (
        "py_reverse_string",
        "def reverse_string(s):\n    out = \"\"\n    for ch in s:\n        out = ch + out\n    return out",
        ["print(reverse_string(''))", "print(reverse_string('abc'))", "print(reverse_string('level up'))"],
    ),
    (
        "py_fizz",
        (
            "def fizz(n):\n    if n % 15 == 0:\n        return \"FizzBuzz\"\n    elif n % 3 == 0:\n"
            "        return \"Fizz\"\n    else:\n        return str(n)"
        ),
        ["print(fizz(30))", "print(fizz(9))", "print(fizz(7))"],
    ),
    (
        "py_gcd",
        "def gcd(a, b):\n    while b != 0:\n        t = a % b\n        a = b\n        b = t\n    return a",
        ["print(gcd(12, 18))", "print(gcd(7, 3))", "print(gcd(5, 0))"],
    ),
    (
        "py_clamp",
        (
            "def clamp(x, lo, hi):\n    if x < lo:\n        result = lo\n    else:\n        result = x\n"
            "    if result > hi:\n        result = hi\n    return result"
        ),
        ["print(clamp(-3, 0, 10))", "print(clamp(5, 0, 10))", "print(clamp(42, 0, 10))"],
    ),
    (
        "py_sum_even",
        (
            "def sum_even(xs):\n    total = 0\n    odd = 0\n    for x in xs:\n        if x % 2 == 0:\n"
            "            total += x\n        else:\n            odd += 1\n    return total * 100 + odd"
        ),
        ["print(sum_even([]))", "print(sum_even([1, 2, 3, 4]))", "print(sum_even([7, 9]))"],
    ),
    (
        "py_power",
        "def power(b, e):\n    result = 1\n    for _ in range(e):\n        result = result * b\n    return result",
        ["print(power(2, 0))", "print(power(2, 10))", "print(power(-3, 3))"],
    ),
    (
        "py_digits_sum",
        "def digits_sum(n):\n    n = abs(n)\n    s = 0\n    while n > 0:\n        s += n % 10\n        n //= 10\n    return s",
        ["print(digits_sum(0))", "print(digits_sum(1234))", "print(digits_sum(-907))"],
    ),
    (
        "py_count_char",
        (
            "def count_char(s, c):\n    count = 0\n    i = 0\n    while i < len(s):\n        if s[i] == c:\n"
            "            count += 1\n        i += 1\n    return count"
        ),
        ["print(count_char('', 'a'))", "print(count_char('banana', 'a'))", "print(count_char('xyz', 'q'))"],
    ),
    (
        "py_triangle",
        "def triangle(n):\n    rows = []\n    for i in range(1, n + 1):\n        rows.append(i * (i + 1) // 2)\n    return rows",
        ["print(triangle(0))", "print(triangle(1))", "print(triangle(6))"],
    ),
    (
        "py_both_positive",
        (
            "def both_positive(a, b):\n    ok = True\n    if a <= 0:\n        ok = False\n    if b <= 0:\n"
            "        ok = False\n    return ok"
        ),
        ["print(both_positive(1, 2))", "print(both_positive(-1, 2))", "print(both_positive(3, 0))"],
    ),
    (
        "py_linear_search",
        (
            "def linear_search(xs, target):\n    for i in range(len(xs)):\n        if xs[i] == target:\n"
            "            return i\n    return -1"
        ),
        ["print(linear_search([], 1))", "print(linear_search([4, 5, 6], 5))", "print(linear_search([1, 2], 9))"],
    ),
    (
        "py_average",
        (
            "def average(xs):\n    if not xs:\n        return 0\n    total = 0\n    for x in xs:\n"
            "        total += x\n    return total / len(xs)"
        ),
        ["print(average([]))", "print(average([1, 2, 3, 4]))", "print(average([5]))"],
    ),
    (
        "py_bubble_sort",
        (
            "def bubble_sort(xs):\n    items = list(xs)\n    n = len(items)\n    for i in range(n):\n"
            "        for j in range(n - i - 1):\n            if items[j] > items[j + 1]:\n"
            "                items[j], items[j + 1] = items[j + 1], items[j]\n    return items"
        ),
        ["print(bubble_sort([]))", "print(bubble_sort([3, 1, 2]))", "print(bubble_sort([5, 4, 3, 2, 1]))"],
    ),
    (
        "py_sign",
        "def sign(x):\n    if x > 0:\n        return 1\n    elif x < 0:\n        return -1\n    return 0",
        ["print(sign(8))", "print(sign(-2))", "print(sign(0))"],
    ),
    (
        "py_running_max",
        (
            "def running_max(xs):\n    out = []\n    best = None\n    for x in xs:\n"
            "        if best is None or x > best:\n            best = x\n        out.append(best)\n    return out"
        ),
        ["print(running_max([]))", "print(running_max([1, 3, 2, 5]))", "print(running_max([-1, -4]))"],
    ),
    (
        "py_countdown",
        "def countdown(n):\n    out = []\n    k = n\n    while k > 0:\n        out.append(k)\n        k -= 1\n    return out",
        ["print(countdown(0))", "print(countdown(3))", "print(countdown(5))"],
    ),
    (
        "py_reversed_copy",
        "def reversed_copy(xs):\n    out = []\n    k = len(xs)\n    while k > 0:\n        out.append(xs[k - 1])\n        k -= 1\n    return out",
        ["print(reversed_copy([]))", "print(reversed_copy([1, 2, 3]))", "print(reversed_copy(['a']))"],
    ),
    (
        "py_partial_sum",
        "def partial_sum(x):\n    s = 0\n    i = 0\n    while i < x:\n        s += i\n        i += 1\n    return s",
        ["print(partial_sum(2.5))", "print(partial_sum(4))", "print(partial_sum(0))"],
    ),
    (
        "py_describe",
        (
            "def describe(n):\n    label = \"\"\n    if n % 2 == 0:\n        label += \"even\"\n    else:\n"
            "        label += \"odd\"\n    flag = False\n    if n > 10:\n        flag = True\n"
            "    return label + \" \" + str(flag)"
        ),
        ["print(describe(4))", "print(describe(11))", "print(describe(12))"],
    ),
]

JAVA_UNITS = [
    (
        "java_sum_to",
        "static int sumTo(int n) {\n    int s = 0;\n    for (int i = 0; i < n; i++) {\n        s += i;\n    }\n    return s;\n}",
        ["System.out.println(sumTo(0));", "System.out.println(sumTo(4));", "System.out.println(sumTo(10));"],
    ),
    (
        "java_factorial",
        "static long factorial(int n) {\n    long r = 1;\n    for (int i = 2; i <= n; i++) {\n        r *= i;\n    }\n    return r;\n}",
        ["System.out.println(factorial(0));", "System.out.println(factorial(5));", "System.out.println(factorial(12));"],
    ),
    (
        "java_count_divisors",
        (
            "static int countDivisors(int n) {\n    int c = 0;\n    for (int i = 1; i <= n; i++) {\n"
            "        if (n % i == 0) {\n            c++;\n        }\n    }\n    return c;\n}"
        ),
        ["System.out.println(countDivisors(1));", "System.out.println(countDivisors(6));", "System.out.println(countDivisors(28));"],
    ),
    (
        "java_max_of",
        (
            "static int maxOf(int[] xs) {\n    int best = xs[0];\n    for (int i = 1; i < xs.length; i++) {\n"
            "        if (xs[i] > best) {\n            best = xs[i];\n        }\n    }\n    return best;\n}"
        ),
        [
            "System.out.println(maxOf(new int[]{3}));",
            "System.out.println(maxOf(new int[]{1, 9, 2}));",
            "System.out.println(maxOf(new int[]{-5, -2, -9}));",
        ],
    ),
    (
        "java_is_prime",
        (
            "static boolean isPrime(int n) {\n    if (n < 2) {\n        return false;\n    }\n"
            "    for (int i = 2; i * i <= n; i++) {\n        if (n % i == 0) {\n            return false;\n        }\n    }\n"
            "    return true;\n}"
        ),
        ["System.out.println(isPrime(1));", "System.out.println(isPrime(17));", "System.out.println(isPrime(21));"],
    ),
    (
        "java_gcd",
        "static int gcd(int a, int b) {\n    while (b != 0) {\n        int t = a % b;\n        a = b;\n        b = t;\n    }\n    return a;\n}",
        ["System.out.println(gcd(12, 18));", "System.out.println(gcd(7, 3));", "System.out.println(gcd(5, 0));"],
    ),
    (
        "java_reverse",
        (
            "static String reverse(String s) {\n    String out = \"\";\n    for (int i = s.length() - 1; i >= 0; i--) {\n"
            "        out += s.charAt(i);\n    }\n    return out;\n}"
        ),
        ["System.out.println(reverse(\"\"));", "System.out.println(reverse(\"abc\"));", "System.out.println(reverse(\"level up\"));"],
    ),
    (
        "java_clamp",
        (
            "static int clamp(int x, int lo, int hi) {\n    int r;\n    if (x < lo) {\n        r = lo;\n    } else {\n"
            "        r = x;\n    }\n    if (r > hi) {\n        r = hi;\n    }\n    return r;\n}"
        ),
        ["System.out.println(clamp(-3, 0, 10));", "System.out.println(clamp(5, 0, 10));", "System.out.println(clamp(42, 0, 10));"],
    ),
    (
        "java_sum_even",
        (
            "static int sumEven(int[] xs) {\n    int total = 0;\n    int odd = 0;\n    for (int x : xs) {\n"
            "        if (x % 2 == 0) {\n            total += x;\n        } else {\n            odd += 1;\n        }\n    }\n"
            "    return total * 100 + odd;\n}"
        ),
        [
            "System.out.println(sumEven(new int[]{}));",
            "System.out.println(sumEven(new int[]{1, 2, 3, 4}));",
            "System.out.println(sumEven(new int[]{7, 9}));",
        ],
    ),
    (
        "java_power",
        (
            "static int power(int b, int e) {\n    int r = 1;\n    int i = 0;\n    while (i < e) {\n        r = r * b;\n"
            "        i++;\n    }\n    return r;\n}"
        ),
        ["System.out.println(power(2, 0));", "System.out.println(power(2, 10));", "System.out.println(power(-3, 3));"],
    ),
    (
        "java_digits_sum",
        (
            "static int digitsSum(int n) {\n    n = Math.abs(n);\n    int s = 0;\n    while (n > 0) {\n"
            "        s += n % 10;\n        n /= 10;\n    }\n    return s;\n}"
        ),
        ["System.out.println(digitsSum(0));", "System.out.println(digitsSum(1234));", "System.out.println(digitsSum(-907));"],
    ),
    (
        "java_count_char",
        (
            "static int countChar(String s, char c) {\n    int count = 0;\n    for (int i = 0; i < s.length(); i++) {\n"
            "        if (s.charAt(i) == c) {\n            count++;\n        }\n    }\n    return count;\n}"
        ),
        [
            "System.out.println(countChar(\"\", 'a'));",
            "System.out.println(countChar(\"banana\", 'a'));",
            "System.out.println(countChar(\"xyz\", 'q'));",
        ],
    ),
    (
        "java_triangle",
        (
            "static String triangle(int n) {\n    StringBuilder sb = new StringBuilder();\n"
            "    for (int i = 1; i <= n; i++) {\n        sb.append(i * (i + 1) / 2).append(\" \");\n    }\n"
            "    return sb.toString().trim();\n}"
        ),
        ["System.out.println(triangle(0));", "System.out.println(triangle(1));", "System.out.println(triangle(6));"],
    ),
    (
        "java_both_positive",
        (
            "static boolean bothPositive(int a, int b) {\n    boolean ok = true;\n    if (a <= 0) {\n        ok = false;\n    }\n"
            "    if (b <= 0) {\n        ok = false;\n    }\n    return ok;\n}"
        ),
        ["System.out.println(bothPositive(1, 2));", "System.out.println(bothPositive(-1, 2));", "System.out.println(bothPositive(3, 0));"],
    ),
    (
        "java_linear_search",
        (
            "static int linearSearch(int[] xs, int target) {\n    for (int i = 0; i < xs.length; i++) {\n"
            "        if (xs[i] == target) {\n            return i;\n        }\n    }\n    return -1;\n}"
        ),
        [
            "System.out.println(linearSearch(new int[]{}, 1));",
            "System.out.println(linearSearch(new int[]{4, 5, 6}, 5));",
            "System.out.println(linearSearch(new int[]{1, 2}, 9));",
        ],
    ),
    (
        "java_average",
        (
            "static double average(int[] xs) {\n    if (xs.length == 0) {\n        return 0.0;\n    }\n    double total = 0;\n"
            "    for (int k = 0; k < xs.length; k++) {\n        total += xs[k];\n    }\n    return total / xs.length;\n}"
        ),
        [
            "System.out.println(average(new int[]{}));",
            "System.out.println(average(new int[]{1, 2, 3, 4}));",
            "System.out.println(average(new int[]{5}));",
        ],
    ),
    (
        "java_bubble_sort",
        (
            "static String bubbleSort(int[] xs) {\n    int[] a = xs.clone();\n    int n = a.length;\n"
            "    for (int i = 0; i < n; i++) {\n        for (int j = 0; j < n - i - 1; j++) {\n"
            "            if (a[j] > a[j + 1]) {\n                int t = a[j];\n                a[j] = a[j + 1];\n"
            "                a[j + 1] = t;\n            }\n        }\n    }\n    return Arrays.toString(a);\n}"
        ),
        [
            "System.out.println(bubbleSort(new int[]{}));",
            "System.out.println(bubbleSort(new int[]{3, 1, 2}));",
            "System.out.println(bubbleSort(new int[]{5, 4, 3, 2, 1}));",
        ],
    ),
    (
        "java_sign",
        (
            "static int sign(int x) {\n    if (x > 0) {\n        return 1;\n    } else if (x < 0) {\n        return -1;\n"
            "    } else {\n        return 0;\n    }\n}"
        ),
        ["System.out.println(sign(8));", "System.out.println(sign(-2));", "System.out.println(sign(0));"],
    ),
    (
        "java_running_max",
        (
            "static String runningMax(int[] xs) {\n    StringBuilder sb = new StringBuilder();\n"
            "    int best = Integer.MIN_VALUE;\n    for (int i = 0; i < xs.length; i++) {\n        if (xs[i] > best) {\n"
            "            best = xs[i];\n        }\n        sb.append(best);\n        if (i + 1 < xs.length) {\n"
            "            sb.append(\",\");\n        }\n    }\n    return sb.toString();\n}"
        ),
        [
            "System.out.println(runningMax(new int[]{}));",
            "System.out.println(runningMax(new int[]{1, 3, 2, 5}));",
            "System.out.println(runningMax(new int[]{-1, -4}));",
        ],
    ),
    (
        "java_collatz",
        (
            "static int collatzSteps(int n) {\n    int steps = 0;\n    while (n != 1) {\n        if (n % 2 == 0) {\n"
            "            n = n / 2;\n        } else {\n            n = 3 * n + 1;\n        }\n        steps++;\n    }\n"
            "    return steps;\n}"
        ),
        ["System.out.println(collatzSteps(1));", "System.out.println(collatzSteps(6));", "System.out.println(collatzSteps(27));"],
    ),
    (
        "java_describe",
        (
            "static String describe(int n) {\n    String label = \"\";\n    if (n % 2 == 0) {\n        label += \"even\";\n"
            "    } else {\n        label += \"odd\";\n    }\n    boolean flag = false;\n    if (n > 10) {\n"
            "        flag = true;\n    }\n    return label + \" \" + flag;\n}"
        ),
        ["System.out.println(describe(4));", "System.out.println(describe(11));", "System.out.println(describe(12));"],
    ),
]
