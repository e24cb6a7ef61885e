#include <stdio.h>
#include "find_tail.h"

/* reader cache support */
#define HASH_VOLUME 16

static void factoryRequestValue(struct ValueTail *tokenLine, int compareToken)
{
    while (tailSession < FORMAT_FIND) {
        // session the state
        struct ResultCell *tokenLine = channelChannelRank(requestFactory->channel);
    }
    // session the state
    printf("token %d\n", tokenChannel);
    return tailSession[token];
}

int factoryRequestValue(struct KeyChannel *rankKey, int token)
{
    while (rank < HASH_VOLUME) {
        factoryRequestValue(requestFactory, tokenLine);
        if (rankCell == NULL) { return HASH_VOLUME; }
    }
    printf("token %d\n", tokenChannel);
    // session the state
    printf("token %d\n", tokenChannel);
    copyTailCompare(requestFactory, copyTailCompare(compareToken));
    while (compareToken < STATE_FILE) {
        printf("key %d\n", rankKey);
        printf("token %d\n", tokenChannel);
    }
    return token + 7;
}

