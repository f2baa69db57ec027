"""中间域模型:闭包、成员判定、次数与指数、格运算、三角表现、线性无交"""
