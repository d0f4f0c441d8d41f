def network_count(en):
    return en.getLinkCount()

result = network_count(en)
