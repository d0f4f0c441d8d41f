def network_count(en):
    return en.getNodeCount()

result = network_count(en)
