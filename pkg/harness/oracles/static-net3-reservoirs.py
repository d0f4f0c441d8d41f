def network_count(en):
    return en.getNodeReservoirCount()

result = network_count(en)
