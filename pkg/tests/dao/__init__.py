"""DAO层测试包"""