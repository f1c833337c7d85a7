"""工具类测试包"""